"""Rotation sets, ZYZ Euler angles and Wigner D-matrices on H_s."""

import logging
import math
import string
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from scipy import linalg
from scipy.spatial.transform import Rotation

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOL = 1e-12
GIMBAL_TOL = 1e-12


def rz(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def ry(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rx(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Haar-random rotation matrix."""
    return Rotation.random(random_state=rng).as_matrix()


def rotation_problems(matrix: np.ndarray, tol: float = ORTHOGONALITY_TOL) -> List[str]:
    """Reasons a 3x3 matrix is not a proper rotation within tol."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (3, 3):
        return [f"shape {matrix.shape} is not (3, 3)"]
    problems = []
    ortho = float(np.max(np.abs(matrix.T @ matrix - np.eye(3))))
    if ortho > tol:
        problems.append(f"R^T R differs from I by {ortho:.3e}")
    det = float(np.linalg.det(matrix))
    if abs(det - 1.0) > tol:
        problems.append(f"det R = {det:.15g}")
    return problems


def euler_zyz(R: np.ndarray) -> Tuple[float, float, float]:
    """
    Angles (alpha, beta, gamma) with R = Rz(alpha) Ry(beta) Rz(gamma).

    beta lies in [0, pi]. At beta = 0 or pi only alpha +/- gamma is
    determined and gamma is set to 0.
    """
    R = np.asarray(R, dtype=float)
    sin_beta = math.hypot(R[0, 2], R[1, 2])
    beta = math.atan2(sin_beta, R[2, 2])
    if sin_beta < GIMBAL_TOL:
        if R[2, 2] > 0:
            return math.atan2(R[1, 0], R[0, 0]), 0.0, 0.0
        return math.atan2(-R[0, 1], R[1, 1]), math.pi, 0.0
    alpha = math.atan2(R[1, 2], R[0, 2])
    gamma = math.atan2(R[2, 1], -R[2, 0])
    return alpha, beta, gamma


@lru_cache(maxsize=32)
def _jx_eigenbasis(s: int) -> np.ndarray:
    """
    Eigenvectors of J_x in the |s, m> basis, columns ordered by eigenvalue -s..s.

    J_x is real symmetric tridiagonal with off-diagonal
    <m+1|J_x|m> = sqrt((s-m)(s+m+1))/2.
    """
    m = np.arange(-s, s)
    off = np.sqrt((s - m) * (s + m + 1)) / 2.0
    if s == 0:
        return np.ones((1, 1))
    _, vectors = linalg.eigh_tridiagonal(np.zeros(2 * s + 1), off)
    vectors.setflags(write=False)
    return vectors


def wigner_small_d(s: int, beta: float) -> np.ndarray:
    """
    d^s(beta)_{m'm} = <s m'| exp(-i beta J_y) |s m>, rows and columns m = -s..s.

    exp(-i beta J_y) = Z exp(-i beta J_x) Z^dagger with Z = exp(-i pi/2 J_z),
    and exp(-i beta J_x) comes from the cached eigenbasis of J_x, whose
    eigenvalues are the integers -s..s.
    """
    vectors = _jx_eigenbasis(s)
    mu = np.arange(-s, s + 1)
    rotated_x = (vectors * np.exp(-1j * beta * mu)) @ vectors.T
    z_phase = np.exp(-1j * math.pi / 2.0 * mu)
    d = z_phase[:, None] * rotated_x * np.conj(z_phase)[None, :]
    return d.real


def wigner_d_explicit(s: int, beta: float) -> np.ndarray:
    """
    d^s(beta) from the explicit sum over half-angle powers.

    Factorials overflow float range beyond s ~ 80; intended as a cross-check for small s.
    """
    dim = 2 * s + 1
    c, sn = math.cos(beta / 2.0), math.sin(beta / 2.0)
    d = np.zeros((dim, dim))
    for i, mp in enumerate(range(-s, s + 1)):
        for j, m in enumerate(range(-s, s + 1)):
            prefactor = math.sqrt(
                math.factorial(s + mp) * math.factorial(s - mp) * math.factorial(s + m) * math.factorial(s - m)
            )
            value = 0.0
            for k in range(max(0, m - mp), min(s + m, s - mp) + 1):
                denom = (
                    math.factorial(s + m - k)
                    * math.factorial(k)
                    * math.factorial(mp - m + k)
                    * math.factorial(s - k - mp)
                )
                sign = (-1) ** (mp - m + k)
                value += sign / denom * c ** (2 * s + m - mp - 2 * k) * sn ** (mp - m + 2 * k)
            d[i, j] = prefactor * value
    return d


def wigner_D(s: int, R: np.ndarray) -> np.ndarray:
    """
    Unitary matrix of f -> f o R^{-1} on H_s in the Y_s^m basis.

    D_{m'm} = e^{-i m' alpha} d_{m'm}(beta) e^{-i m gamma} for
    R = Rz(alpha) Ry(beta) Rz(gamma); coefficients transform as c -> D c.
    """
    alpha, beta, gamma = euler_zyz(R)
    m = np.arange(-s, s + 1)
    d = wigner_small_d(s, beta)
    return np.exp(-1j * m * alpha)[:, None] * d * np.exp(-1j * m * gamma)[None, :]


LETTERS = string.ascii_lowercase


@dataclass(frozen=True, eq=False)
class RotationSet:
    """
    Generators g_1..g_N of a subgroup of SO(3), with q = 2N - 1.

    Letters: generator i is written LETTERS[i] and its inverse in upper case.
    Letter index 2i is g_i and 2i + 1 is g_i^{-1}.
    """

    generators: Tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = tuple(np.array(g, dtype=float) for g in self.generators)
        for g in mats:
            g.setflags(write=False)
        object.__setattr__(self, "generators", mats)
        problems = self.validate()
        if problems:
            raise ValueError("Invalid rotation set: " + "; ".join(problems))

    @property
    def N(self) -> int:
        return len(self.generators)

    @property
    def q(self) -> int:
        return 2 * self.N - 1

    def validate(self) -> List[str]:
        problems = []
        if self.N < 2:
            problems.append(f"need at least 2 generators, got {self.N}")
        if self.N > len(LETTERS):
            problems.append(f"at most {len(LETTERS)} generators supported")
        for i, g in enumerate(self.generators):
            problems.extend(f"generator {i}: {p}" for p in rotation_problems(g))
        return problems

    @cached_property
    def letters(self) -> np.ndarray:
        """The 2N matrices g_1, g_1^{-1}, g_2, g_2^{-1}, ... stacked."""
        mats = []
        for g in self.generators:
            mats.extend([g, g.T])
        return np.stack(mats)

    @staticmethod
    def inverse_letter(letter: int) -> int:
        return letter ^ 1

    def letter_name(self, letter: int) -> str:
        name = LETTERS[letter // 2]
        return name.upper() if letter % 2 else name


def default_rotation_set() -> RotationSet:
    """
    Rotations by arccos(3/5) about the z- and x-axes.

    Rational entries; the pair generates a free group.
    """
    a = np.array([[3, -4, 0], [4, 3, 0], [0, 0, 5]]) / 5.0
    b = np.array([[5, 0, 0], [0, 3, -4], [0, 4, 3]]) / 5.0
    return RotationSet((a, b))


def rotation_set_from_matrices(matrices: Sequence[np.ndarray]) -> RotationSet:
    return RotationSet(tuple(matrices))
