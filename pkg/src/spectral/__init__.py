"""Spectral primitives shared by the graph and sphere labs."""

from .chebyshev import (
    avg_cos_square,
    avg_cos_square_grid,
    chebyshev_first,
    chebyshev_first_table,
    chebyshev_second,
    chebyshev_u_matrix,
    nb_block,
    nb_block_conjugated,
    time_average_weights,
    transfer_matrix_power,
)
from .params import HS_CONSTANT, SpectralParam, gap_from_radius, spectral_param, trivial_eigenvalue
from .plancherel import (
    PlancherelMeasure,
    plancherel_cdf,
    plancherel_density,
    plancherel_mass,
    plancherel_moment,
)
from .tree import tree_closed_walks, tree_kernel_value, tree_sphere_size

__all__ = [
    "avg_cos_square",
    "avg_cos_square_grid",
    "chebyshev_first",
    "chebyshev_first_table",
    "chebyshev_second",
    "chebyshev_u_matrix",
    "nb_block",
    "nb_block_conjugated",
    "time_average_weights",
    "transfer_matrix_power",
    "HS_CONSTANT",
    "SpectralParam",
    "gap_from_radius",
    "spectral_param",
    "trivial_eigenvalue",
    "PlancherelMeasure",
    "plancherel_cdf",
    "plancherel_density",
    "plancherel_mass",
    "plancherel_moment",
    "tree_closed_walks",
    "tree_kernel_value",
    "tree_sphere_size",
]
