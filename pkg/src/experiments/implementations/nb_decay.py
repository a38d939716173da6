"""Decay of non-backtracking powers on the complement of the constants."""

import logging
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from ...graphs.arcs import arc_graph, fit_decay, nb_norm_decay
from ...graphs.spectrum import eigensystem, spectral_gap
from ..base import GraphExperiment
from ..experiment import Point, PointResult

logger = logging.getLogger(__name__)

SLOPE_MARGIN = 0.05


class NbDecayExperiment(GraphExperiment):
    """One row per power k = 0..kmax; the fit per graph goes to the summary."""

    columns = ["k", "instance", "file", "power", "norm", "beta", "slope", "raw_slope"]

    def get_name(self) -> str:
        return "nb-decay"

    def run_point(self, point: Point) -> PointResult:
        g = self.load_graph(point)
        beta = spectral_gap(eigensystem(g, self.settings.dense_limit), g.q)
        norms = nb_norm_decay(arc_graph(g), g.q, self.config.kmax)
        fit = fit_decay(norms, beta)
        logger.info(
            f"k={g.k}: beta={beta:.4f}, fitted slope {fit.slope:.4f} (raw {fit.raw_slope:.4f}), C={fit.constant:.3f}"
        )
        label = self.point_label(point, g)
        rows = [
            {**label, "power": p, "norm": float(v), "beta": beta, "slope": fit.slope, "raw_slope": fit.raw_slope}
            for p, v in enumerate(norms)
        ]
        metrics = {
            **label,
            "beta": beta,
            "slope": fit.slope,
            "raw_slope": fit.raw_slope,
            "constant": fit.constant,
            "growth_constant": fit.growth_constant,
            "within_margin": bool(fit.slope <= -beta + SLOPE_MARGIN),
        }
        return PointResult(rows=rows, metrics=metrics)

    def summarize(self, frame: pd.DataFrame, metrics: List[Dict[str, Any]]) -> Dict[str, Any]:
        if not metrics:
            return {}
        return {
            "fits": metrics,
            "max_constant": float(np.max([m["constant"] for m in metrics])),
            "all_within_margin": all(m["within_margin"] for m in metrics),
        }
