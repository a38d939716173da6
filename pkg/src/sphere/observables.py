"""Observables on the sphere and their matrix elements inside H_s."""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..spectral import HS_CONSTANT, time_average_weights
from ..utils.errors import NumericalFailure
from .harmonics import HarmonicSpace, legendre_table_signed, to_spherical
from .operator import JointBasis, joint_basis

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SphereFunction:
    """
    A function on the sphere, either a finite expansion sum a_{l,m} Y_l^m
    or a pointwise handle with a stated sup-norm bound and quadrature band.
    """

    coefficients: Dict[Tuple[int, int], complex] = field(default_factory=dict)
    func: Optional[Callable[[np.ndarray], np.ndarray]] = None
    sup_bound: Optional[float] = None
    band: Optional[int] = None

    def __post_init__(self):
        for (l, m) in self.coefficients:
            if l < 0 or abs(m) > l:
                raise ValueError(f"Invalid harmonic index (l={l}, m={m})")
        if self.func is not None and self.band is None:
            raise ValueError("Pointwise sphere functions need a quadrature band")

    @classmethod
    def harmonic(cls, l: int, m: int = 0) -> "SphereFunction":
        """Y_l^0, or the real combination (Y_l^m + (-1)^m Y_l^{-m})/sqrt(2) for m > 0."""
        if m == 0:
            return cls({(l, 0): 1.0})
        amp = 1.0 / math.sqrt(2.0)
        return cls({(l, m): amp, (l, -m): (-1) ** m * amp})

    @classmethod
    def random_band(cls, band: int, rng: np.random.Generator) -> "SphereFunction":
        """Random real mean-zero expansion on degrees 1..band with sup-norm at most 1."""
        coeffs: Dict[Tuple[int, int], complex] = {}
        for l in range(1, band + 1):
            coeffs[(l, 0)] = complex(rng.standard_normal())
            for m in range(1, l + 1):
                value = complex(rng.standard_normal(), rng.standard_normal()) / math.sqrt(2.0)
                coeffs[(l, m)] = value
                coeffs[(l, -m)] = (-1) ** m * np.conj(value)
        scale = sum(abs(c) * math.sqrt((2 * l + 1) / (4 * math.pi)) for (l, _), c in coeffs.items())
        return cls({key: c / scale for key, c in coeffs.items()})

    @classmethod
    def pointwise(cls, func: Callable[[np.ndarray], np.ndarray], sup_bound: float, band: int) -> "SphereFunction":
        return cls(func=func, sup_bound=sup_bound, band=band)

    @property
    def degree(self) -> int:
        """Harmonic degree used to size quadrature grids."""
        if self.func is not None:
            return int(self.band)
        return max((l for l, _ in self.coefficients), default=0)

    @property
    def mean(self) -> float:
        """Integral against the normalized measure d sigma."""
        if self.func is not None:
            grid = HarmonicSpace(0, band=2 * self.degree)
            return float(np.real(grid.integrate(self.func(grid.grid_points())))) / (4 * math.pi)
        return float(np.real(self.coefficients.get((0, 0), 0.0))) / math.sqrt(4 * math.pi)

    def sup_norm_bound(self) -> float:
        """Stated bound, or sum |a_lm| sqrt((2l+1)/4pi) for expansions."""
        if self.sup_bound is not None:
            return float(self.sup_bound)
        return float(sum(abs(c) * math.sqrt((2 * l + 1) / (4 * math.pi)) for (l, _), c in self.coefficients.items()))

    def l2_norm(self) -> float:
        """Norm in L^2(dA) for expansions."""
        if self.func is not None:
            raise ValueError("l2_norm is only available for expansions")
        return float(math.sqrt(sum(abs(c) ** 2 for c in self.coefficients.values())))

    def validate(self, atol: float = 1e-10) -> List[str]:
        problems = []
        if abs(self.mean) > atol:
            problems.append(f"observable mean is {self.mean:.3e}, expected 0")
        return problems

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at unit vectors of shape (..., 3); real part for real observables."""
        points = np.asarray(points, dtype=float)
        if self.func is not None:
            return np.asarray(self.func(points))
        theta, phi = to_spherical(points)
        total = np.zeros(theta.shape, dtype=complex)
        for l in sorted({l for l, _ in self.coefficients}):
            polar = legendre_table_signed(l, theta)
            for m in range(-l, l + 1):
                c = self.coefficients.get((l, m))
                if c:
                    total += c * polar[m + l] * np.exp(1j * m * phi)
        if np.max(np.abs(total.imag), initial=0.0) < 1e-12 * max(1.0, np.max(np.abs(total), initial=0.0)):
            return total.real
        return total


def matrix_element_operator(s: int, a: SphereFunction, space: Optional[HarmonicSpace] = None) -> np.ndarray:
    """
    M_{m m'} = <Y_s^m, a Y_s^{m'}> by quadrature.

    The phi integral is a discrete Fourier transform of a on each theta
    ring, so M is assembled one diagonal m' - m at a time.

    Args:
        s: Degree
        a: Observable
        space: Optional precomputed HarmonicSpace; its band must cover a

    Raises:
        NumericalFailure: If the quadrature band is smaller than the observable's degree
    """
    space = space or HarmonicSpace(s, band=a.degree)
    if space.s != s:
        raise ValueError(f"HarmonicSpace has degree {space.s}, expected {s}")
    if space.band < a.degree:
        raise NumericalFailure(
            f"Insufficient quadrature order: band {space.band} < observable degree {a.degree}"
        )

    values = a.evaluate(space.grid_points())
    # sum_j a(theta, phi_j) e^{+i d phi_j} for every offset d
    ring_fourier = np.fft.ifft(values, axis=1) * space.n_phi * space.phi_weight
    weighted_polar = space.polar * space.theta_weights[None, :]
    dim = space.dim
    M = np.zeros((dim, dim), dtype=complex)
    for d in range(-(dim - 1), dim):
        rows = np.arange(max(0, -d), min(dim, dim - d))
        cols = rows + d
        coeff = ring_fourier[:, d % space.n_phi]
        M[rows, cols] = np.einsum("it,it,t->i", weighted_polar[rows], space.polar[cols], coeff)
    return M


def diagonal_elements_sphere(jb: JointBasis, M: np.ndarray) -> np.ndarray:
    """<psi_j, a psi_j> for the joint eigenbasis."""
    V = jb.coefficients
    return np.einsum("mj,mn,nj->j", V.conj(), M, V)


def quantum_variance_sphere(s: int, rots, a: SphereFunction, jb: Optional[JointBasis] = None) -> float:
    """
    (1/(2s+1)) sum_j |<psi_j, a psi_j>|^2 for mean-zero a.

    Raises:
        ValueError: If a is not mean zero
    """
    problems = a.validate()
    if problems:
        raise ValueError("Invalid observable: " + "; ".join(problems))
    jb = jb or joint_basis(s, rots)
    diag = diagonal_elements_sphere(jb, matrix_element_operator(s, a))
    return float(np.mean(np.abs(diag) ** 2))


@dataclass(frozen=True)
class WindowedVariance:
    count: int
    variance: Optional[float]


def variance_in_window(jb: JointBasis, M: np.ndarray, interval: Tuple[float, float]) -> WindowedVariance:
    """
    N(I, s) and the variance restricted to eigenvalues in I.

    An empty window reports count 0 and variance None.
    """
    lo, hi = interval
    if lo > hi:
        raise ValueError(f"Interval endpoints out of order: [{lo}, {hi}]")
    mask = (jb.eigenvalues >= lo) & (jb.eigenvalues <= hi)
    count = int(np.count_nonzero(mask))
    if count == 0:
        return WindowedVariance(count=0, variance=None)
    diag = diagonal_elements_sphere(jb, M)[mask]
    return WindowedVariance(count=count, variance=float(np.mean(np.abs(diag) ** 2)))


@dataclass(frozen=True)
class SphereHsCheck:
    """Both sides of sum_j |<psi_j, a psi_j>|^2 <= 11.12 ||A_T||_HS^2 inside H_s."""

    diagonal_sum: float
    hs_norm_sq: float

    @property
    def holds(self) -> bool:
        return self.diagonal_sum <= HS_CONSTANT * self.hs_norm_sq


def sphere_hs_check(jb: JointBasis, M: np.ndarray, T: int) -> SphereHsCheck:
    inner = jb.coefficients.conj().T @ M @ jb.coefficients
    averaged = time_average_weights(jb.eigenvalues, T) * inner
    return SphereHsCheck(
        diagonal_sum=float(np.sum(np.abs(np.diag(inner)) ** 2)),
        hs_norm_sq=float(np.sum(np.abs(averaged) ** 2)),
    )
