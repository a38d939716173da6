"""Diagonal matrix elements of sphere observables in the joint eigenbasis."""

import logging
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from ...sphere.observables import diagonal_elements_sphere, matrix_element_operator, sphere_hs_check
from ...sphere.operator import joint_basis
from ..base import SphereExperiment
from ..experiment import Point, PointResult

logger = logging.getLogger(__name__)


class SphereVarianceExperiment(SphereExperiment):
    """Rows (s, observable, j, lambda, diag_element); variances and HS checks per s in the metrics."""

    columns = ["s", "observable", "j", "lambda", "diag_element"]

    def get_name(self) -> str:
        return "sphere-variance"

    def run_point(self, point: Point) -> PointResult:
        s = point["s"]
        jb = joint_basis(s, self.rots)
        rows = []
        checks = []
        variances = []
        for c, a in enumerate(self.observables()):
            M = matrix_element_operator(s, a)
            diag = diagonal_elements_sphere(jb, M)
            variance = float(np.mean(np.abs(diag) ** 2))
            variances.append(variance)
            rows.extend(
                {"s": s, "observable": c, "j": j, "lambda": float(lam), "diag_element": float(d.real)}
                for j, (lam, d) in enumerate(zip(jb.eigenvalues, diag))
            )
            for T in sorted(set(self.config.T_values)):
                check = sphere_hs_check(jb, M, T)
                if not check.holds:
                    logger.warning(f"s={s}, T={T}: diagonal sum {check.diagonal_sum:.3e} exceeds HS bound")
                checks.append(
                    {
                        "observable": c,
                        "T": T,
                        "diagonal_sum": check.diagonal_sum,
                        "hs_norm_sq": check.hs_norm_sq,
                        "holds": check.holds,
                    }
                )
            logger.info(f"s={s}, observable {c}: variance {variance:.4e}")
        return PointResult(rows=rows, metrics={"s": s, "variance": variances, "hs_checks": checks})

    def summarize(self, frame: pd.DataFrame, metrics: List[Dict[str, Any]]) -> Dict[str, Any]:
        metrics = sorted(metrics, key=lambda m: m["s"])
        by_observable = [
            [m["variance"][c] for m in metrics] for c in range(len(metrics[0]["variance"]))
        ] if metrics else []
        return {
            "variance": {str(m["s"]): m["variance"] for m in metrics},
            "strictly_decreasing": [bool(np.all(np.diff(v) < 0)) for v in by_observable],
            "hs_violations": sum(not c["holds"] for m in metrics for c in m["hs_checks"]),
        }
