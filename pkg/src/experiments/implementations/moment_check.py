"""Trace moments of T_q on H_s against tree closed-walk counts."""

from typing import Any, Dict, List

import pandas as pd

from ...sphere.kesten_mckay import moment_table
from ..base import SphereExperiment
from ..experiment import Point, PointResult

RELATIVE_TOL = 0.1
ABSOLUTE_TOL = 0.05


class MomentCheckExperiment(SphereExperiment):
    columns = ["s", "n", "trace", "normalized", "target", "deviation", "within_tolerance"]

    def get_name(self) -> str:
        return "moment-check"

    def run_point(self, point: Point) -> PointResult:
        table = moment_table([point["s"]], self.rots, self.config.moments)
        table["within_tolerance"] = table["deviation"].abs() <= RELATIVE_TOL * table["target"] + ABSOLUTE_TOL
        return PointResult(rows=table.to_dict("records"))

    def summarize(self, frame: pd.DataFrame, metrics: List[Dict[str, Any]]) -> Dict[str, Any]:
        if frame.empty:
            return {}
        return {
            "max_abs_deviation": float(frame["deviation"].abs().max()),
            "all_within_tolerance": bool(frame["within_tolerance"].astype(bool).all()),
        }
