"""Regular graphs, their averaging operator and non-backtracking arc graph."""

from .graph import RegularGraph, random_regular, read_graph, tree_ball, write_graph
from .operators import Observable, chebyshev_propagate, time_averaged_operator, tq_apply
from .spectrum import EigenSystem, eigensystem, quantum_variance, spectral_gap, variance_hs_check

__all__ = [
    "RegularGraph",
    "random_regular",
    "read_graph",
    "tree_ball",
    "write_graph",
    "Observable",
    "chebyshev_propagate",
    "time_averaged_operator",
    "tq_apply",
    "EigenSystem",
    "eigensystem",
    "quantum_variance",
    "spectral_gap",
    "variance_hs_check",
]
