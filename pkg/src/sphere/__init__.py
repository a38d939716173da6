"""Spherical harmonics, rotation sets and the averaging operator on each H_s."""

from .harmonics import HarmonicSpace, ylm, zonal
from .observables import SphereFunction, matrix_element_operator, quantum_variance_sphere
from .operator import JointBasis, joint_basis, moment_trace, tq_on_hs
from .rotations import RotationSet, default_rotation_set, wigner_D
from .words import WordTable, certify_condition, min_orbit_separation, word_table

__all__ = [
    "HarmonicSpace",
    "ylm",
    "zonal",
    "SphereFunction",
    "matrix_element_operator",
    "quantum_variance_sphere",
    "JointBasis",
    "joint_basis",
    "moment_trace",
    "tq_on_hs",
    "RotationSet",
    "default_rotation_set",
    "wigner_D",
    "WordTable",
    "certify_condition",
    "min_orbit_separation",
    "word_table",
]
