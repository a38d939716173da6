"""Factory for creating experiment instances based on configuration."""

import logging

from ..utils.config import ExperimentConfig, GlobalSettings
from .experiment import Experiment

logger = logging.getLogger(__name__)


def create_experiment(config: ExperimentConfig, settings: GlobalSettings) -> Experiment:
    """
    Create an experiment instance based on configuration.

    Args:
        config: Validated experiment configuration
        settings: Global settings (budgets, dense limit)

    Returns:
        Experiment instance

    Raises:
        ValueError: If the experiment kind is unknown or its inputs are invalid
        FileNotFoundError: If a rotation file is missing
    """
    kind = config.kind

    if kind == "graph-variance":
        from .implementations.graph_variance import GraphVarianceExperiment

        return GraphVarianceExperiment(config, settings)

    elif kind == "graph-kesten-mckay":
        from .implementations.graph_kesten_mckay import GraphKestenMcKayExperiment

        return GraphKestenMcKayExperiment(config, settings)

    elif kind == "nb-decay":
        from .implementations.nb_decay import NbDecayExperiment

        return NbDecayExperiment(config, settings)

    elif kind == "graph-hs-bound":
        from .implementations.graph_hs_bound import GraphHsBoundExperiment

        return GraphHsBoundExperiment(config, settings)

    elif kind == "sphere-variance":
        from .implementations.sphere_variance import SphereVarianceExperiment

        return SphereVarianceExperiment(config, settings)

    elif kind == "sphere-kesten-mckay":
        from .implementations.sphere_kesten_mckay import SphereKestenMcKayExperiment

        return SphereKestenMcKayExperiment(config, settings)

    elif kind == "sphere-gap":
        from .implementations.sphere_gap import SphereGapExperiment

        return SphereGapExperiment(config, settings)

    elif kind == "word-angles":
        from .implementations.word_angles import WordAnglesExperiment

        return WordAnglesExperiment(config, settings)

    elif kind == "moment-check":
        from .implementations.moment_check import MomentCheckExperiment

        return MomentCheckExperiment(config, settings)

    else:
        raise ValueError(f"Unknown experiment kind: {kind}")
