"""Spherical harmonics, Gauss-Legendre quadrature on the sphere and zonal harmonics."""

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Tuple

import numpy as np
from numpy.typing import ArrayLike

FOUR_PI = 4.0 * math.pi
DOMAIN_TOL = 1e-12


def _check_domain(x: np.ndarray) -> np.ndarray:
    if np.any(np.abs(x) > 1.0 + DOMAIN_TOL):
        raise ValueError("Legendre argument must lie in [-1, 1]")
    return np.clip(x, -1.0, 1.0)


def legendre(s: int, x: ArrayLike):
    """
    Legendre polynomial L_s(x) by the Bonnet recurrence
    (l+1) L_{l+1} = (2l+1) x L_l - l L_{l-1}.

    Raises:
        ValueError: If s < 0 or |x| > 1
    """
    if s < 0:
        raise ValueError(f"Degree must be nonnegative, got {s}")
    x_arr = _check_domain(np.asarray(x, dtype=float))
    prev = np.ones_like(x_arr)
    curr = x_arr.copy()
    if s == 0:
        result = prev
    else:
        for l in range(1, s):
            prev, curr = curr, ((2 * l + 1) * x_arr * curr - l * prev) / (l + 1)
        result = curr
    return float(result) if np.ndim(x) == 0 else result


def assoc_legendre(s: int, m: int, x: ArrayLike):
    """
    Associated Legendre function L_s^m(x), Condon-Shortley phase included
    (L_1^1(cos t) = -sin t).

    Diagonal start L_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}, then upward in degree.

    Raises:
        ValueError: Unless 0 <= m <= s and |x| <= 1
    """
    if not 0 <= m <= s:
        raise ValueError(f"Need 0 <= m <= s, got s={s}, m={m}")
    x_arr = _check_domain(np.asarray(x, dtype=float))
    root = np.sqrt(1.0 - x_arr * x_arr)

    diag = np.ones_like(x_arr)
    for i in range(1, m + 1):
        diag = -(2 * i - 1) * root * diag
    if s == m:
        result = diag
    else:
        prev, curr = diag, x_arr * (2 * m + 1) * diag
        for l in range(m + 1, s):
            prev, curr = curr, ((2 * l + 1) * x_arr * curr - (l + m) * prev) / (l - m + 1)
        result = curr
    return float(result) if np.ndim(x) == 0 else result


def legendre_table(s: int, theta: ArrayLike) -> np.ndarray:
    """
    Orthonormal polar factors N_s^m(theta) for m = 0..s.

    Y_s^m(theta, phi) = N_s^m(theta) e^{i m phi} with the Condon-Shortley
    phase. The recurrence runs in the normalized quantities (diagonal, then
    upward in degree, vectorized over m), so it neither overflows nor loses
    accuracy for large s.

    Returns:
        Array of shape (s+1,) + shape(theta), row m
    """
    theta = np.asarray(theta, dtype=float)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    shape = (s + 1,) + theta.shape

    prev2 = np.zeros(shape)
    prev1 = np.zeros(shape)
    prev1[0] = 1.0 / math.sqrt(FOUR_PI)
    for l in range(1, s + 1):
        curr = np.zeros(shape)
        if l >= 2:
            m = np.arange(l - 1)
            a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
            b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
            expand = (slice(None),) + (None,) * theta.ndim
            curr[: l - 1] = a[expand] * (cos_t * prev1[: l - 1] - b[expand] * prev2[: l - 1])
        curr[l - 1] = math.sqrt(2.0 * l + 1.0) * cos_t * prev1[l - 1]
        curr[l] = -math.sqrt((2.0 * l + 1.0) / (2.0 * l)) * sin_t * prev1[l - 1]
        prev2, prev1 = prev1, curr
    return prev1


def legendre_table_signed(s: int, theta: ArrayLike) -> np.ndarray:
    """N_s^m(theta) for m = -s..s, using N^{-m} = (-1)^m N^m."""
    table = legendre_table(s, theta)
    signs = (-1.0) ** np.arange(s, 0, -1)
    expand = (slice(None),) + (None,) * np.ndim(theta)
    negative = table[:0:-1] * signs[expand]
    return np.concatenate([negative, table], axis=0)


def ylm(s: int, m: int, theta: ArrayLike, phi: ArrayLike):
    """
    Orthonormal spherical harmonic Y_s^m(theta, phi), Condon-Shortley phase.

    Negative orders satisfy Y_s^{-m} = (-1)^m conj(Y_s^m).

    Raises:
        ValueError: If |m| > s
    """
    if abs(m) > s or s < 0:
        raise ValueError(f"Need |m| <= s, got s={s}, m={m}")
    theta_arr = np.asarray(theta, dtype=float)
    phi_arr = np.asarray(phi, dtype=float)
    polar = _single_polar(s, abs(m), theta_arr)
    value = polar * np.exp(1j * abs(m) * phi_arr)
    if m < 0:
        value = (-1) ** abs(m) * np.conj(value)
    return complex(value) if value.ndim == 0 else value


def _single_polar(s: int, m: int, theta: np.ndarray) -> np.ndarray:
    """N_s^m(theta) for one (s, m), m >= 0."""
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    diag = np.full(theta.shape, 1.0 / math.sqrt(FOUR_PI))
    for i in range(1, m + 1):
        diag = -math.sqrt((2.0 * i + 1.0) / (2.0 * i)) * sin_t * diag
    if s == m:
        return diag
    prev, curr = diag, math.sqrt(2.0 * m + 3.0) * cos_t * diag
    for l in range(m + 2, s + 1):
        a = math.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
        b = math.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
        prev, curr = curr, a * (cos_t * curr - b * prev)
    return curr


def to_spherical(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Unit vectors (..., 3) to (theta, phi) with theta the colatitude."""
    points = np.asarray(points, dtype=float)
    theta = np.arccos(np.clip(points[..., 2], -1.0, 1.0))
    phi = np.arctan2(points[..., 1], points[..., 0])
    return theta, phi


def to_cartesian(theta: ArrayLike, phi: ArrayLike) -> np.ndarray:
    theta, phi = np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    sin_t = np.sin(theta)
    return np.stack([sin_t * np.cos(phi), sin_t * np.sin(phi), np.cos(theta)], axis=-1)


@lru_cache(maxsize=64)
def _gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@dataclass(frozen=True, eq=False)
class HarmonicSpace:
    """
    H_s with the basis Y_s^m, m = -s..s, and a product quadrature grid.

    The grid has ceil((4s + band + 2)/2) Gauss-Legendre nodes in cos(theta)
    and 4s + 2 band + 1 uniform nodes in phi, exact for products of two
    degree-s harmonics with a function of harmonic degree <= band.
    """

    s: int
    band: int = 0

    def __post_init__(self):
        if self.s < 0 or self.band < 0:
            raise ValueError(f"Need s >= 0 and band >= 0, got s={self.s}, band={self.band}")

    @property
    def dim(self) -> int:
        return 2 * self.s + 1

    @property
    def orders(self) -> np.ndarray:
        return np.arange(-self.s, self.s + 1)

    @property
    def n_theta(self) -> int:
        return math.ceil((4 * self.s + self.band + 2) / 2)

    @property
    def n_phi(self) -> int:
        return 4 * self.s + 2 * self.band + 1

    @cached_property
    def theta(self) -> np.ndarray:
        nodes, _ = _gauss_legendre(self.n_theta)
        return np.arccos(nodes)

    @cached_property
    def theta_weights(self) -> np.ndarray:
        _, weights = _gauss_legendre(self.n_theta)
        return np.asarray(weights)

    @cached_property
    def phi(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.n_phi) / self.n_phi

    @property
    def phi_weight(self) -> float:
        return 2.0 * math.pi / self.n_phi

    @cached_property
    def polar(self) -> np.ndarray:
        """N_s^m at the theta nodes, shape (2s+1, n_theta), row index m + s."""
        return legendre_table_signed(self.s, self.theta)

    def grid_points(self) -> np.ndarray:
        """Cartesian grid, shape (n_theta, n_phi, 3)."""
        return to_cartesian(self.theta[:, None], self.phi[None, :])

    def integrate(self, values: np.ndarray) -> complex:
        """Quadrature of grid values of shape (n_theta, n_phi) against dA."""
        return (self.theta_weights @ np.asarray(values)).sum() * self.phi_weight

    def basis_on_grid(self) -> np.ndarray:
        """Y_s^m on the grid, shape (2s+1, n_theta, n_phi)."""
        phase = np.exp(1j * np.outer(self.orders, self.phi))
        return self.polar[:, :, None] * phase[:, None, :]

    def project(self, values: np.ndarray) -> np.ndarray:
        """
        Coefficients <Y_s^m, f> of grid values f by quadrature.

        Args:
            values: f on the grid, shape (n_theta, n_phi)

        Returns:
            Complex vector of length 2s+1
        """
        fourier = np.fft.fft(np.asarray(values), axis=1) * self.phi_weight
        cols = fourier[:, self.orders % self.n_phi]
        return np.einsum("t,mt,tm->m", self.theta_weights, self.polar, cols)

    def project_function(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Project a pointwise function of unit vectors (..., 3) onto H_s."""
        return self.project(f(self.grid_points()))

    def gram(self) -> np.ndarray:
        """Numerical Gram matrix <Y^m, Y^m'>; identity up to quadrature error."""
        basis = self.basis_on_grid()
        weighted = basis * self.theta_weights[None, :, None] * self.phi_weight
        return np.einsum("atp,btp->ab", np.conj(basis), weighted)

    def evaluate(self, coefficients: np.ndarray, points: np.ndarray) -> np.ndarray:
        """sum_m c_m Y_s^m at unit vectors of shape (..., 3)."""
        theta, phi = to_spherical(points)
        polar = legendre_table_signed(self.s, theta)
        phase = np.exp(1j * np.multiply.outer(self.orders, phi))
        return np.tensordot(np.asarray(coefficients), polar * phase, axes=(0, 0))


def zonal(s: int, z: np.ndarray, y: np.ndarray):
    """Z_z^{(s)}(y) = (2s+1)/(4 pi) L_s(<z, y>), vectorized over y of shape (..., 3)."""
    dots = np.clip(np.asarray(y, dtype=float) @ np.asarray(z, dtype=float), -1.0, 1.0)
    return (2 * s + 1) / FOUR_PI * legendre(s, dots)


def sphere_distance(z: np.ndarray, y: np.ndarray):
    """Great-circle distance, accurate for nearby and antipodal points."""
    z, y = np.asarray(z, dtype=float), np.asarray(y, dtype=float)
    cross = np.linalg.norm(np.cross(z, y), axis=-1)
    return np.arctan2(cross, np.sum(z * y, axis=-1))


@dataclass(frozen=True)
class ZonalBound:
    """|<Z_z, Z_z'>| against 2 sqrt(s / d_pm(z, z'))."""

    inner_product: float
    bound: float

    @property
    def holds(self) -> bool:
        return abs(self.inner_product) < self.bound


def zonal_inner_product_bound(s: int, z: np.ndarray, z_prime: np.ndarray) -> ZonalBound:
    """
    Both sides of the zonal inner-product estimate.

    By the reproducing property <Z_z, Z_z'> = Z_z(z'); d_pm is the distance
    from z to the nearer of z' and -z'.
    """
    d = float(sphere_distance(z, z_prime))
    d_pm = min(d, math.pi - d)
    inner = float(zonal(s, z, z_prime))
    bound = math.inf if d_pm == 0.0 else 2.0 * math.sqrt(s / d_pm)
    return ZonalBound(inner_product=inner, bound=bound)


def zonal_convolution_matrix(s: int, s_prime: int) -> np.ndarray:
    """
    Convolution with Z_0^{(s)} in the Y_{s'}^m coefficient basis.

    (Z~ f)(x) = integral of Z_x^{(s)}(y) f(y) dA(y), evaluated with the
    Legendre form of the kernel on a grid exact for degrees s + s'. The
    result is the identity for s' = s and zero otherwise.
    """
    grid = HarmonicSpace(max(s, s_prime))
    points = grid.grid_points().reshape(-1, 3)
    weights = np.repeat(grid.theta_weights, grid.n_phi) * grid.phi_weight

    target = HarmonicSpace(s_prime)
    basis = target.evaluate(np.eye(target.dim), points)
    kernel = (2 * s + 1) / FOUR_PI * legendre(s, np.clip(points @ points.T, -1.0, 1.0))
    convolved = kernel @ (weights[:, None] * basis.T)
    return np.conj(basis) @ (weights[:, None] * convolved)
