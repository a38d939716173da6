"""The rotation-averaging operator T_q restricted to H_s and its joint eigenbasis."""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional

import numpy as np
from scipy import linalg

from ..spectral import (
    gap_from_radius,
    nb_block,
    time_average_weights,
    trivial_eigenvalue,
)
from ..utils.errors import NumericalFailure
from .rotations import RotationSet, wigner_D

logger = logging.getLogger(__name__)


def tq_on_hs(s: int, rots: RotationSet) -> np.ndarray:
    """
    Matrix of T_q f(x) = q^{-1/2} sum_j (f(g_j x) + f(g_j^{-1} x)) on H_s.

    Returns:
        Hermitian (2s+1) x (2s+1) matrix in the Y_s^m basis
    """
    total = np.zeros((2 * s + 1, 2 * s + 1), dtype=complex)
    for g in rots.generators:
        d = wigner_D(s, g)
        total += d + d.conj().T
    total /= math.sqrt(rots.q)
    return (total + total.conj().T) / 2.0


@dataclass(frozen=True, eq=False)
class JointBasis:
    """Eigenvalues of T_q on H_s (ascending) and eigenvectors as Y_s^m coefficient columns."""

    s: int
    q: int
    eigenvalues: np.ndarray
    coefficients: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.s + 1

    def unitarity_error(self) -> float:
        gram = self.coefficients.conj().T @ self.coefficients
        return float(np.max(np.abs(gram - np.eye(self.dim))))

    def residual(self, tq: np.ndarray) -> float:
        diff = tq @ self.coefficients - self.coefficients * self.eigenvalues
        return float(np.max(np.linalg.norm(diff, axis=0)))

    def lambda_star(self) -> float:
        """Largest |eigenvalue| off the constants (all of them for s >= 1)."""
        values = self.eigenvalues
        if self.s == 0:
            return 0.0
        return float(np.max(np.abs(values)))

    def gap(self) -> float:
        return gap_from_radius(self.q, self.lambda_star())


def joint_basis(s: int, rots: RotationSet) -> JointBasis:
    """
    Hermitian eigensolve of tq_on_hs.

    Raises:
        NumericalFailure: If LAPACK fails or the residual exceeds 1e-8
    """
    tq = tq_on_hs(s, rots)
    try:
        values, vectors = linalg.eigh(tq)
    except linalg.LinAlgError as e:
        raise NumericalFailure(f"Eigensolve failed on H_{s}: {e}") from e
    jb = JointBasis(s=s, q=rots.q, eigenvalues=values, coefficients=vectors)
    residual = jb.residual(tq)
    if residual > 1e-8:
        raise NumericalFailure(f"Joint basis residual {residual:.3e} exceeds 1e-8 at s={s}")
    return jb


def moment_trace(s: int, rots: RotationSet, n: int) -> float:
    """Tr(T_q^n on H_s) = sum_j lambda(s, j)^n."""
    if n < 0:
        raise ValueError(f"Moment order must be nonnegative, got {n}")
    if n == 0:
        return float(2 * s + 1)
    values = linalg.eigvalsh(tq_on_hs(s, rots))
    return float(np.sum(values**n))


@dataclass(frozen=True)
class GapRecord:
    s: int
    lambda_star: float
    beta: float
    running_min: float


def sphere_gap(s_values: Iterable[int], rots: RotationSet) -> List[GapRecord]:
    """
    Measured gap beta_s per degree s >= 1 and its running minimum.

    The running minimum is a measurement only; nothing here asserts it
    stays positive.
    """
    records = []
    running = math.inf
    for s in sorted(s_values):
        if s < 1:
            continue
        values = linalg.eigvalsh(tq_on_hs(s, rots))
        lam_star = float(np.max(np.abs(values)))
        beta = gap_from_radius(rots.q, lam_star)
        running = min(running, beta)
        logger.info(f"H_{s}: lambda*={lam_star:.6f}, beta={beta:.6f}, running min={running:.6f}")
        records.append(GapRecord(s=s, lambda_star=lam_star, beta=beta, running_min=running))
    return records


def band_gap(band: int, rots: RotationSet) -> float:
    """beta_H for H = H_1 + ... + H_band, the gap seen by a band-limited observable."""
    if band < 1:
        raise ValueError(f"Band must be at least 1, got {band}")
    return min(record.beta for record in sphere_gap(range(1, band + 1), rots))


def time_averaged_matrix_sphere(jb: JointBasis, M: np.ndarray, T: int) -> np.ndarray:
    """
    (1/T) sum_{n=1}^T P_2n(T^/2) M P_2n(T^/2) expressed in the joint eigenbasis.

    Unitarily equivalent to the Y_s^m form, so HS norms agree.
    """
    inner = jb.coefficients.conj().T @ M @ jb.coefficients
    return time_average_weights(jb.eigenvalues, T) * inner


def time_averaged_matrix_direct(tq: np.ndarray, M: np.ndarray, T: int) -> np.ndarray:
    """The same average in the Y_s^m basis via the Chebyshev recurrence on T^."""
    dim = tq.shape[0]
    prev = np.eye(dim, dtype=complex)
    curr = tq / 2.0
    total = np.zeros_like(M, dtype=complex)
    for m in range(1, 2 * T):
        prev, curr = curr, tq @ curr - prev
        if (m + 1) % 2 == 0:
            total += curr @ M @ curr
    return total / T


def arc_shadow_norms(eigenvalues: np.ndarray, q: int, kmax: int, exclude_trivial: bool = True) -> np.ndarray:
    """
    max over eigenvalues of ||nb_block(lambda, q)^k|| for k = 0..kmax.

    This is the part of the arc-operator decay visible inside a finite
    sum of H_s: the 2x2 action on span{Bw, Ew} for each joint eigenfunction w.
    """
    values = np.asarray(eigenvalues, dtype=float)
    if exclude_trivial:
        values = values[np.abs(values - trivial_eigenvalue(q)) > 1e-8]
    norms = np.zeros(kmax + 1)
    norms[0] = 1.0
    for lam in values:
        block = nb_block(float(lam), q)
        power = np.eye(2)
        for k in range(1, kmax + 1):
            power = block @ power
            norms[k] = max(norms[k], np.linalg.norm(power, ord=2))
    return norms


def joint_basis_problems(jb: JointBasis, tq: Optional[np.ndarray] = None) -> List[str]:
    """JointBasis invariants: unitarity, residual, spectral band."""
    problems = []
    if jb.unitarity_error() > 1e-8:
        problems.append(f"coefficient matrix not unitary ({jb.unitarity_error():.3e})")
    if tq is not None and jb.residual(tq) > 1e-8:
        problems.append(f"residual {jb.residual(tq):.3e} exceeds 1e-8")
    edge = trivial_eigenvalue(jb.q) + 1e-8
    if np.any(np.abs(jb.eigenvalues) > edge):
        problems.append("eigenvalue outside the spectral band")
    return problems
