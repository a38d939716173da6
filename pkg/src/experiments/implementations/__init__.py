"""Experiment implementations."""

from .graph_hs_bound import GraphHsBoundExperiment
from .graph_kesten_mckay import GraphKestenMcKayExperiment
from .graph_variance import GraphVarianceExperiment
from .moment_check import MomentCheckExperiment
from .nb_decay import NbDecayExperiment
from .sphere_gap import SphereGapExperiment
from .sphere_kesten_mckay import SphereKestenMcKayExperiment
from .sphere_variance import SphereVarianceExperiment
from .word_angles import WordAnglesExperiment

__all__ = [
    "GraphHsBoundExperiment",
    "GraphKestenMcKayExperiment",
    "GraphVarianceExperiment",
    "MomentCheckExperiment",
    "NbDecayExperiment",
    "SphereGapExperiment",
    "SphereKestenMcKayExperiment",
    "SphereVarianceExperiment",
    "WordAnglesExperiment",
]
