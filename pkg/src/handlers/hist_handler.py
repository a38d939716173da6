"""Handler for `ergolab hist`: eigenvalue histogram next to the Plancherel measure."""

import logging
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from ..spectral import PlancherelMeasure, trivial_eigenvalue
from ..utils.artifacts import atomic_write_text, format_csv, read_eigenvalues

logger = logging.getLogger(__name__)

TRIVIAL_TOL = 1e-8


def emit_histogram(eigenvalues: np.ndarray, bins: int, q: int) -> pd.DataFrame:
    """
    Per-bin empirical mass and Plancherel mass on [-2, 2].

    Eigenvalues outside [-2, 2] are counted in the end bins, so the
    empirical column sums to 1 whenever there is at least one eigenvalue.

    Args:
        eigenvalues: Spectrum to bin
        bins: Number of equal-width bins, at least 2
        q: Branching number of the Plancherel measure

    Returns:
        DataFrame with columns bin_lo, bin_hi, count, empirical, plancherel

    Raises:
        ValueError: If bins < 2
    """
    if bins < 2:
        raise ValueError(f"Need at least 2 bins, got {bins}")
    measure = PlancherelMeasure(q)
    values = np.asarray(eigenvalues, dtype=float).ravel()
    edges = np.linspace(-2.0, 2.0, bins + 1)
    counts, _ = np.histogram(np.clip(values, -2.0, 2.0), bins=edges)
    empirical = counts / values.size if values.size else np.zeros(bins)
    return pd.DataFrame(
        {
            "bin_lo": edges[:-1],
            "bin_hi": edges[1:],
            "count": counts,
            "empirical": empirical,
            "plancherel": [measure.mass(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])],
        }
    )


class HistHandler:
    """Reads eigenvalues from a CSV column and writes the histogram table."""

    def __init__(self, q: int, bins: int, column: str = "lambda", exclude_trivial: bool = False):
        self.q = q
        self.bins = bins
        self.column = column
        self.exclude_trivial = exclude_trivial

    def load(self, path: str | Path) -> np.ndarray:
        values = read_eigenvalues(path, self.column)
        if self.exclude_trivial:
            keep = np.abs(values - trivial_eigenvalue(self.q)) > TRIVIAL_TOL
            logger.info(f"Excluding {int(np.sum(~keep))} trivial eigenvalues")
            values = values[keep]
        return values

    def handle(self, path: str | Path, output: Optional[str | Path] = None) -> str:
        """
        Build the histogram CSV and write it to output, if given.

        Returns:
            The CSV text
        """
        frame = emit_histogram(self.load(path), self.bins, self.q)
        text = format_csv(frame)
        if output is not None:
            atomic_write_text(Path(output), text)
            logger.info(f"Wrote histogram to {output}")
        return text
