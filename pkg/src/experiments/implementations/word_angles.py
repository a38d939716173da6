"""Reduced-word rotation angles, free-group collisions and the exceptional set."""

import logging
from typing import Any, Dict, List

import pandas as pd

from ...sphere.words import exceptional_set_measure, fixed_points, word_table
from ..base import SphereExperiment
from ..experiment import Point, PointResult

logger = logging.getLogger(__name__)


class WordAnglesExperiment(SphereExperiment):
    """One row per word length; s_values, when given, size the exceptional set E_s(L)."""

    columns = ["length", "count", "min_angle", "mean_angle", "argmin_word"]

    def get_name(self) -> str:
        return "word-angles"

    def points(self) -> List[Point]:
        return [{"L": self.config.word_length}]

    def run_point(self, point: Point) -> PointResult:
        table = word_table(self.rots, point["L"], self.settings.word_budget)
        collisions = table.collisions
        for a, b in collisions[:10]:
            logger.error(f"Free-group collision at float resolution: {a} = {b}")
        mats, _ = table.nontrivial()
        fixed = fixed_points(mats)
        metrics = {
            "L": point["L"],
            "words": table.total,
            "collisions": [list(pair) for pair in collisions],
            "fitted_decay": table.fit_angle_decay(),
            "fixed_points": len(fixed),
            "exceptional_measure": {
                str(s): exceptional_set_measure(fixed, s) for s in sorted(set(self.config.s_values)) if s >= 1
            },
        }
        return PointResult(rows=table.angle_summary().to_dict("records"), metrics=metrics)

    def summarize(self, frame: pd.DataFrame, metrics: List[Dict[str, Any]]) -> Dict[str, Any]:
        if not metrics:
            return {}
        m = metrics[0]
        return {
            "words": m["words"],
            "collision_count": len(m["collisions"]),
            "collisions": m["collisions"][:10],
            "min_angle": float(frame["min_angle"].min()) if not frame.empty else None,
            "fitted_decay": m["fitted_decay"],
            "fixed_points": m["fixed_points"],
            "exceptional_measure": m["exceptional_measure"],
        }
