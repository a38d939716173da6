"""Abstract base class for experiment sweeps."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from ..utils.config import ExperimentConfig, GlobalSettings

Point = Dict[str, int]


@dataclass
class PointResult:
    """CSV rows and JSON metrics produced by one sweep point."""

    rows: List[Dict[str, Any]]
    metrics: Dict[str, Any] = field(default_factory=dict)


class Experiment(ABC):
    """
    A parameter sweep split into independent points.

    Subclasses list their points, compute one point at a time, and
    optionally reduce the collected table to summary metrics. Points must
    not share mutable state so they can run in a worker pool.
    """

    #: CSV columns in output order
    columns: List[str] = []

    def __init__(self, config: ExperimentConfig, settings: GlobalSettings):
        self.config = config
        self.settings = settings

    @abstractmethod
    def get_name(self) -> str:
        """
        Get the experiment name for logging and output files.

        Returns:
            Experiment name
        """
        pass

    @abstractmethod
    def points(self) -> List[Point]:
        """
        Sweep points in output order.

        Returns:
            List of points, each a mapping of parameter name to integer value
        """
        pass

    @abstractmethod
    def run_point(self, point: Point) -> PointResult:
        """
        Compute one sweep point.

        Args:
            point: One entry of points()

        Returns:
            PointResult with the point's CSV rows

        Raises:
            Exception: If the computation fails; the caller flags the point
        """
        pass

    def summarize(self, frame: pd.DataFrame, metrics: List[Dict[str, Any]]) -> Dict[str, Any]:
        """Experiment-level summary from the unflagged rows and per-point metrics."""
        return {}

    def point_keys(self) -> List[str]:
        points = self.points()
        return list(points[0].keys()) if points else []

    def point_seed(self, point: Point, *extra: int) -> np.random.SeedSequence:
        """Seed for a point, independent of scheduling order."""
        return np.random.SeedSequence([self.config.seed, *point.values(), *extra])

    def point_rng(self, point: Point, *extra: int) -> np.random.Generator:
        return np.random.default_rng(self.point_seed(point, *extra))
