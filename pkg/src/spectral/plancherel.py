"""The q-adic Plancherel (Kesten-McKay) measure of the normalized tree operator."""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12


@dataclass(frozen=True)
class PlancherelMeasure:
    """
    Limiting spectral distribution of T_q on (q+1)-regular graphs.

    The density (q+1) sqrt(4-x^2) / (2 pi ((q + 1/q + 2) - x^2)) lives on
    [-2, 2]. Integrals are taken in the angle variable x = 2cos(t), where
    the integrand is smooth up to the endpoints.
    """

    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"q must be ≥ 2, got {self.q}")

    @property
    def _pole(self) -> float:
        return self.q + 1.0 / self.q + 2.0

    def density(self, x: float) -> float:
        if abs(x) >= 2.0:
            return 0.0
        return (self.q + 1) * math.sqrt(4.0 - x * x) / (2.0 * math.pi * (self._pole - x * x))

    def _angle_integrand(self, t: float, power: int = 0) -> float:
        x = 2.0 * math.cos(t)
        sin_t = math.sin(t)
        value = (self.q + 1) * 4.0 * sin_t * sin_t / (2.0 * math.pi * (self._pole - x * x))
        return value * x**power if power else value

    def mass(self, lo: float, hi: float) -> float:
        """
        Measure of [lo, hi], clipped to the support.

        Raises:
            ValueError: If lo > hi
        """
        if lo > hi:
            raise ValueError(f"Interval endpoints out of order: [{lo}, {hi}]")
        lo, hi = max(lo, -2.0), min(hi, 2.0)
        if lo >= hi:
            return 0.0
        # x = 2cos(t) reverses orientation
        t_lo, t_hi = math.acos(hi / 2.0), math.acos(lo / 2.0)
        value, _ = integrate.quad(
            self._angle_integrand, t_lo, t_hi, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL
        )
        return value

    def cdf(self, x):
        """Cumulative distribution function, vectorized over x."""
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        values = np.array([self.mass(-2.0, min(max(v, -2.0), 2.0)) for v in x_arr])
        return float(values[0]) if np.ndim(x) == 0 else values

    def moment(self, n: int) -> float:
        """The n-th moment, integral of x^n d mu_q."""
        value, _ = integrate.quad(
            self._angle_integrand, 0.0, math.pi, args=(n,), epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL
        )
        return value


def plancherel_density(q: int, x: float) -> float:
    return PlancherelMeasure(q).density(x)


def plancherel_mass(q: int, interval: tuple[float, float]) -> float:
    """Mass of interval = (lo, hi) under mu_q."""
    lo, hi = interval
    return PlancherelMeasure(q).mass(lo, hi)


def plancherel_cdf(q: int, x):
    return PlancherelMeasure(q).cdf(x)


def plancherel_moment(q: int, n: int) -> float:
    return PlancherelMeasure(q).moment(n)
