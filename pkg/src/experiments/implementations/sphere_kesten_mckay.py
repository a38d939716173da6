"""Eigenvalue counts in a window against the Plancherel mass."""

from typing import Any, Dict, List

import pandas as pd

from ...sphere.kesten_mckay import kesten_mckay_empirical
from ..base import SphereExperiment
from ..experiment import Point, PointResult


class SphereKestenMcKayExperiment(SphereExperiment):
    columns = ["s", "count", "dim", "ratio", "target", "deviation"]

    def get_name(self) -> str:
        return "sphere-kesten-mckay"

    def run_point(self, point: Point) -> PointResult:
        table = kesten_mckay_empirical([point["s"]], self.rots, self.config.interval)
        return PointResult(rows=table.to_dict("records"))

    def summarize(self, frame: pd.DataFrame, metrics: List[Dict[str, Any]]) -> Dict[str, Any]:
        if frame.empty:
            return {}
        return {
            "interval": list(self.config.interval),
            "target": float(frame["target"].iloc[0]),
            "max_abs_deviation": float(frame["deviation"].abs().max()),
        }
