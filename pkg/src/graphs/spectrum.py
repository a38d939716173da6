"""Eigen-decomposition of T_q and the spectral quantities built on it."""

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy import linalg, stats

from ..spectral import (
    HS_CONSTANT,
    PlancherelMeasure,
    SpectralParam,
    gap_from_radius,
    time_average_weights,
    trivial_eigenvalue,
)
from ..utils.errors import NumericalFailure
from .graph import RegularGraph
from .operators import Observable, tq_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Ascending eigenvalues and orthonormal eigenvectors (columns) of T_q."""

    q: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def k(self) -> int:
        return len(self.eigenvalues)

    def params(self) -> List[SpectralParam]:
        return [SpectralParam.from_eigenvalue(float(lam)) for lam in self.eigenvalues]

    def trivial_index(self) -> int:
        """Index of the eigenvalue closest to 2cosh(log(q)/2)."""
        return int(np.argmin(np.abs(self.eigenvalues - trivial_eigenvalue(self.q))))

    def nontrivial_eigenvalues(self) -> np.ndarray:
        return np.delete(self.eigenvalues, self.trivial_index())

    def residual(self, g: RegularGraph) -> float:
        """max_j ||T_q psi_j - lambda_j psi_j||."""
        diff = tq_matrix(g) @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.max(np.linalg.norm(diff, axis=0)))

    def gram_error(self) -> float:
        gram = self.eigenvectors.T @ self.eigenvectors
        return float(np.max(np.abs(gram - np.eye(self.k))))


def eigensystem(g: RegularGraph, dense_limit: int = 4096) -> EigenSystem:
    """
    Dense symmetric eigensolve of T_q.

    Raises:
        ValueError: If the graph exceeds the dense limit
        NumericalFailure: If LAPACK fails or the result misses its tolerances
    """
    if g.k > dense_limit:
        raise ValueError(f"Vertex count {g.k} exceeds dense limit {dense_limit}")

    try:
        values, vectors = linalg.eigh(tq_matrix(g).toarray())
    except linalg.LinAlgError as e:
        raise NumericalFailure(f"Eigensolve failed for k={g.k}: {e}") from e

    es = EigenSystem(q=g.q, eigenvalues=values, eigenvectors=vectors)
    residual = es.residual(g)
    if residual > 1e-8:
        raise NumericalFailure(f"Eigen residual {residual:.3e} exceeds 1e-8 for k={g.k}")
    return es


def spectral_gap(es: EigenSystem, q: int) -> float:
    """
    beta = log(q)/2 - arccosh(max(lambda*, 2)/2) with lambda* the largest
    nontrivial |eigenvalue|.

    Raises:
        ValueError: If there is no nontrivial eigenvalue (k = 1)
    """
    if es.k < 2:
        raise ValueError("Spectral gap needs at least two eigenvalues")
    lambda_star = float(np.max(np.abs(es.nontrivial_eigenvalues())))
    return gap_from_radius(q, lambda_star)


def diagonal_elements(es: EigenSystem, a: Observable) -> np.ndarray:
    """<psi_j, a psi_j> for every eigenvector."""
    return np.einsum("ij,i,ij->j", es.eigenvectors, a.values, es.eigenvectors)


def quantum_variance(es: EigenSystem, a: Observable) -> float:
    """(1/k) sum_j |<psi_j, a psi_j>|^2."""
    return float(np.mean(diagonal_elements(es, a) ** 2))


@dataclass(frozen=True)
class VarianceHsCheck:
    """Both sides of variance <= 11.12 * (1/k) * ||A_T||_HS^2."""

    variance: float
    hs_norm_sq: float
    k: int
    T: int

    @property
    def bound(self) -> float:
        return HS_CONSTANT * self.hs_norm_sq / self.k

    @property
    def holds(self) -> bool:
        return self.variance <= self.bound


def time_averaged_hs_sq(es: EigenSystem, a: Observable, T: int) -> float:
    """
    ||A_T||_HS^2 in the eigenbasis: ||W o (Psi^T M_a Psi)||_F^2.

    Same value as hs_norm(time_averaged_operator(...))**2 without forming
    the propagators.
    """
    return float(time_averaged_hs_sq_curve(es, a, [T])[0])


def time_averaged_hs_sq_curve(es: EigenSystem, a: Observable, T_values: Sequence[int]) -> np.ndarray:
    """||A_T||_HS^2 for each T in T_values, sharing one change of basis."""
    matrix_elements = es.eigenvectors.T @ (a.values[:, None] * es.eigenvectors)
    return np.array(
        [float(np.sum((time_average_weights(es.eigenvalues, T) * matrix_elements) ** 2)) for T in T_values]
    )


def variance_hs_check(es: EigenSystem, a: Observable, T: int) -> VarianceHsCheck:
    return VarianceHsCheck(
        variance=quantum_variance(es, a),
        hs_norm_sq=time_averaged_hs_sq(es, a, T),
        k=es.k,
        T=T,
    )


def ks_distance(es: EigenSystem, q: int) -> float:
    """Kolmogorov-Smirnov distance between the nontrivial spectrum and mu_q."""
    measure = PlancherelMeasure(q)
    result = stats.kstest(es.nontrivial_eigenvalues(), measure.cdf)
    return float(result.statistic)


def min_time_average_weight(eigenvalues: np.ndarray, T: int) -> float:
    """Smallest diagonal weight (1/T) sum_n P_2n(lambda/2)^2; at least 0.3 for T >= 10."""
    weights = np.diag(time_average_weights(eigenvalues, T))
    return float(np.min(weights)) if weights.size else math.nan


def time_averaged_hs(es: EigenSystem, a: Observable, T: int) -> float:
    return math.sqrt(time_averaged_hs_sq(es, a, T))
