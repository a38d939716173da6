"""Eigenvalue counts and trace moments on H_s against the Plancherel measure."""

import logging
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
import pandas as pd

from ..spectral import plancherel_mass, tree_closed_walks
from .operator import JointBasis, joint_basis, moment_trace
from .rotations import RotationSet

logger = logging.getLogger(__name__)


def window_count(eigenvalues: np.ndarray, interval: Tuple[float, float]) -> int:
    """N(I, s): eigenvalues in the closed interval."""
    lo, hi = interval
    return int(np.count_nonzero((eigenvalues >= lo) & (eigenvalues <= hi)))


def kesten_mckay_empirical(
    s_list: Iterable[int],
    rots: RotationSet,
    interval: Tuple[float, float],
    bases: Optional[Dict[int, JointBasis]] = None,
) -> pd.DataFrame:
    """
    Ratios N(I, s)/(2s+1) next to the Plancherel target mu_q(I).

    Args:
        s_list: Degrees to evaluate
        rots: Generators
        interval: Closed window I
        bases: Joint bases already computed, keyed by s

    Returns:
        DataFrame with columns s, count, dim, ratio, target, deviation
    """
    lo, hi = interval
    if lo > hi:
        raise ValueError(f"Interval endpoints out of order: [{lo}, {hi}]")
    target = plancherel_mass(rots.q, (lo, hi))
    bases = bases or {}
    rows = []
    for s in sorted(set(s_list)):
        jb = bases.get(s) or joint_basis(s, rots)
        count = window_count(jb.eigenvalues, interval)
        ratio = count / jb.dim
        rows.append(
            {
                "s": s,
                "count": count,
                "dim": jb.dim,
                "ratio": ratio,
                "target": target,
                "deviation": ratio - target,
            }
        )
        logger.info(f"H_{s}: N(I)={count}/{jb.dim}, ratio {ratio:.4f} vs target {target:.4f}")
    return pd.DataFrame(rows, columns=["s", "count", "dim", "ratio", "target", "deviation"])


def moment_table(s_list: Iterable[int], rots: RotationSet, moments: Iterable[int]) -> pd.DataFrame:
    """
    Normalized trace moments M_n(s)/(2s+1) against q^{-n/2} times the tree walk count.

    Returns:
        DataFrame with columns s, n, trace, normalized, target, deviation
    """
    rows = []
    for s in sorted(set(s_list)):
        for n in sorted(set(moments)):
            trace = moment_trace(s, rots, n)
            normalized = trace / (2 * s + 1)
            target = tree_closed_walks(rots.q, n) * rots.q ** (-n / 2.0)
            rows.append(
                {
                    "s": s,
                    "n": n,
                    "trace": trace,
                    "normalized": normalized,
                    "target": target,
                    "deviation": normalized - target,
                }
            )
    return pd.DataFrame(rows, columns=["s", "n", "trace", "normalized", "target", "deviation"])
