"""Measured spectral gap of T_q on each H_s."""

import logging
from typing import Any, Dict, List

import pandas as pd

from ...sphere.operator import sphere_gap
from ..base import SphereExperiment
from ..experiment import Point, PointResult

logger = logging.getLogger(__name__)


class SphereGapExperiment(SphereExperiment):
    columns = ["s", "lambda_star", "beta"]

    def get_name(self) -> str:
        return "sphere-gap"

    def run_point(self, point: Point) -> PointResult:
        records = sphere_gap([point["s"]], self.rots)
        return PointResult(rows=[{"s": r.s, "lambda_star": r.lambda_star, "beta": r.beta} for r in records])

    def summarize(self, frame: pd.DataFrame, metrics: List[Dict[str, Any]]) -> Dict[str, Any]:
        if frame.empty:
            return {}
        ordered = frame.sort_values("s")
        running = ordered["beta"].cummin()
        logger.info(f"Empirical gap (running minimum over s): {float(running.iloc[-1]):.6f}")
        return {
            "running_min": {str(int(s)): float(b) for s, b in zip(ordered["s"], running)},
            "min_beta": float(running.iloc[-1]),
        }
