"""Spectral parametrization lambda = 2cos(theta) and gap extraction."""

import math
from dataclasses import dataclass
from typing import Optional

# 1/0.09 rounded up: the time-average weights are at least 0.3 once T >= 10
HS_CONSTANT = 11.12


def trivial_eigenvalue(q: int) -> float:
    """Return 2cosh(log(q)/2) = (q+1)/sqrt(q), the eigenvalue of constants."""
    return 2.0 * math.cosh(math.log(q) / 2.0)


def gap_from_radius(q: int, lambda_star: float) -> float:
    """
    Spectral gap beta from the largest nontrivial |eigenvalue|.

    beta = log(q)/2 - arccosh(max(lambda_star, 2)/2), so a tempered
    nontrivial spectrum gives the maximal gap log(q)/2. The result is
    clipped to [0, log(q)/2] to absorb roundoff at the trivial eigenvalue.
    """
    half_log_q = math.log(q) / 2.0
    radius = math.acosh(max(lambda_star, 2.0) / 2.0)
    return min(max(half_log_q - radius, 0.0), half_log_q)


@dataclass(frozen=True)
class SpectralParam:
    """An eigenvalue of T_q with its angle parametrization."""

    lam: float
    theta: Optional[float] = None
    r: Optional[float] = None

    @property
    def tempered(self) -> bool:
        return self.theta is not None

    @classmethod
    def from_eigenvalue(cls, lam: float, atol: float = 1e-12) -> "SpectralParam":
        """
        Classify lam as tempered (|lam| <= 2, lam = 2cos(theta)) or
        untempered (lam = +/-2cosh(r), r > 0).

        Args:
            lam: Real eigenvalue
            atol: Tolerance beyond +/-2 before a value counts as untempered

        Returns:
            SpectralParam with theta (tempered) or r (untempered) set
        """
        if abs(lam) <= 2.0 + atol:
            return cls(lam=lam, theta=math.acos(max(-1.0, min(1.0, lam / 2.0))))
        return cls(lam=lam, r=math.acosh(abs(lam) / 2.0))

    def chebyshev_first(self, n: int) -> float:
        """P_n(lam/2) from the angle: cos(n theta) or sign^n cosh(n r)."""
        if self.tempered:
            return math.cos(n * self.theta)
        sign = 1.0 if self.lam > 0 else -1.0
        return sign**n * math.cosh(n * self.r)


def spectral_param(lam: float) -> SpectralParam:
    """Shorthand for SpectralParam.from_eigenvalue."""
    return SpectralParam.from_eigenvalue(lam)
