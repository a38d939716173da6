"""Nontrivial graph spectra against the Plancherel measure."""

from typing import Any, Dict, List

import numpy as np
import pandas as pd

from ...graphs.spectrum import eigensystem, ks_distance, spectral_gap
from ..base import GraphExperiment
from ..experiment import Point, PointResult


class GraphKestenMcKayExperiment(GraphExperiment):
    columns = ["k", "instance", "file", "ks_distance", "beta", "tempered_fraction"]

    def get_name(self) -> str:
        return "graph-kesten-mckay"

    def run_point(self, point: Point) -> PointResult:
        g = self.load_graph(point)
        es = eigensystem(g, self.settings.dense_limit)
        nontrivial = es.nontrivial_eigenvalues()
        row = {
            **self.point_label(point, g),
            "ks_distance": ks_distance(es, g.q),
            "beta": spectral_gap(es, g.q),
            "tempered_fraction": float(np.mean(np.abs(nontrivial) <= 2.0)) if nontrivial.size else 0.0,
        }
        return PointResult(rows=[row])

    def summarize(self, frame: pd.DataFrame, metrics: List[Dict[str, Any]]) -> Dict[str, Any]:
        if frame.empty:
            return {}
        return {"max_ks_distance": float(frame["ks_distance"].max()), "min_beta": float(frame["beta"].min())}
