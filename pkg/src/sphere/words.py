"""Reduced words in the rotation generators, their angles, fixed points and orbits."""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.spatial import cKDTree

from ..utils.errors import BudgetExceededError, OrbitCollisionError
from .rotations import RotationSet

logger = logging.getLogger(__name__)

DEFAULT_WORD_BUDGET = 1_000_000
COLLISION_TOL = 1e-9
ORBIT_COLLISION_TOL = 1e-13
GENERIC_POINT = np.array([1.0, math.sqrt(2.0), math.sqrt(3.0)]) / math.sqrt(6.0)


def word_count(N: int, length: int) -> int:
    """Number of reduced words of the given length in N free generators."""
    if length == 0:
        return 1
    return 2 * N * (2 * N - 1) ** (length - 1)


def total_word_count(N: int, max_length: int) -> int:
    return sum(word_count(N, length) for length in range(max_length + 1))


def rotation_angles(matrices: np.ndarray) -> np.ndarray:
    """
    Rotation angle in [0, pi] of each matrix in a (..., 3, 3) stack.

    atan2 of the axial part against (trace - 1)/2 keeps small angles accurate.
    """
    R = np.asarray(matrices, dtype=float)
    cos_part = np.clip((np.trace(R, axis1=-2, axis2=-1) - 1.0) / 2.0, -1.0, 1.0)
    axial = _axial_vectors(R)
    return np.arctan2(np.linalg.norm(axial, axis=-1), cos_part)


def _axial_vectors(R: np.ndarray) -> np.ndarray:
    return 0.5 * np.stack(
        [R[..., 2, 1] - R[..., 1, 2], R[..., 0, 2] - R[..., 2, 0], R[..., 1, 0] - R[..., 0, 1]],
        axis=-1,
    )


def rotation_axes(matrices: np.ndarray) -> np.ndarray:
    """
    Unit rotation axis of each matrix, as the null vector of R - I.

    The sign follows the axial vector where that is nonzero, so rotations by
    angles in (0, pi) turn counterclockwise about the returned axis.
    """
    R = np.asarray(matrices, dtype=float)
    single = R.ndim == 2
    R = R.reshape(-1, 3, 3)
    _, _, vh = np.linalg.svd(R - np.eye(3))
    axes = vh[:, -1, :]
    orient = np.einsum("ni,ni->n", axes, _axial_vectors(R))
    axes = np.where((orient < 0)[:, None], -axes, axes)
    return axes[0] if single else axes


@dataclass(frozen=True, eq=False)
class WordTable:
    """
    Every reduced word of length <= L over the letters of a rotation set.

    letters[l] holds the words of length l as rows of letter indices, in
    lexicographic order; matrices[l] and angles[l] are aligned with it.
    """

    rots: RotationSet
    L: int
    letters: Tuple[np.ndarray, ...]
    matrices: Tuple[np.ndarray, ...]
    angles: Tuple[np.ndarray, ...]

    def count(self, length: int) -> int:
        return len(self.letters[length])

    @property
    def total(self) -> int:
        return sum(len(words) for words in self.letters)

    def name(self, length: int, index: int) -> str:
        """Readable form of a word, 'e' for the empty word."""
        if length == 0:
            return "e"
        return "".join(self.rots.letter_name(int(x)) for x in self.letters[length][index])

    def nontrivial(self, max_length: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        """Matrices and (length, index) labels of all words with 1 <= length <= max_length."""
        top = self.L if max_length is None else min(max_length, self.L)
        mats = [self.matrices[length] for length in range(1, top + 1)]
        labels = [
            np.column_stack([np.full(self.count(length), length), np.arange(self.count(length))])
            for length in range(1, top + 1)
        ]
        if not mats:
            return np.zeros((0, 3, 3)), np.zeros((0, 2), dtype=int)
        return np.concatenate(mats), np.concatenate(labels)

    def min_angle(self, length: int) -> float:
        if length == 0 or self.count(length) == 0:
            return math.nan
        return float(np.min(self.angles[length]))

    def angle_summary(self) -> pd.DataFrame:
        """Per-length word count and angle statistics."""
        rows = []
        for length in range(1, self.L + 1):
            angles = self.angles[length]
            argmin = int(np.argmin(angles))
            rows.append(
                {
                    "length": length,
                    "count": self.count(length),
                    "min_angle": float(angles[argmin]),
                    "mean_angle": float(np.mean(angles)),
                    "argmin_word": self.name(length, argmin),
                }
            )
        return pd.DataFrame(rows, columns=["length", "count", "min_angle", "mean_angle", "argmin_word"])

    def fit_angle_decay(self) -> Optional[float]:
        """Fitted c' in min_angle(l) ~ exp(-c' l); None with fewer than two lengths."""
        lengths = np.arange(1, self.L + 1)
        if len(lengths) < 2:
            return None
        mins = np.array([self.min_angle(length) for length in lengths])
        slope, _ = np.polyfit(lengths, np.log(mins), 1)
        return float(-slope)

    @cached_property
    def collisions(self) -> List[Tuple[str, str]]:
        """
        Pairs of distinct reduced words whose matrices agree within COLLISION_TOL.

        The empty word takes part, so a word equal to the identity shows up
        as a pair with 'e'.
        """
        mats, labels = self.nontrivial()
        mats = np.concatenate([np.eye(3)[None], mats])
        labels = np.concatenate([np.zeros((1, 2), dtype=int), labels])
        tree = cKDTree(mats.reshape(len(mats), 9))
        pairs = sorted(tree.query_pairs(r=COLLISION_TOL))
        return [(self.name(*labels[i]), self.name(*labels[j])) for i, j in pairs]


def word_table(rots: RotationSet, L: int, budget: int = DEFAULT_WORD_BUDGET) -> WordTable:
    """
    Enumerate all reduced words of length <= L with their product matrices.

    Args:
        rots: Generators
        L: Maximum word length
        budget: Upper bound on the total number of words

    Returns:
        WordTable with per-length letters, matrices and angles

    Raises:
        ValueError: If L is negative
        BudgetExceededError: If the word count exceeds the budget
    """
    if L < 0:
        raise ValueError(f"Word length must be non-negative, got {L}")
    total = total_word_count(rots.N, L)
    if total > budget:
        raise BudgetExceededError(f"{total} words up to length {L} exceed the word budget {budget}")

    n_letters = 2 * rots.N
    alphabet = np.arange(n_letters)
    inverse = alphabet ^ 1
    letters = [np.zeros((1, 0), dtype=np.int16)]
    matrices = [np.eye(3)[None]]
    angles = [np.zeros(1)]

    for length in range(1, L + 1):
        prev_words, prev_mats = letters[-1], matrices[-1]
        if length == 1:
            allowed = np.ones((1, n_letters), dtype=bool)
        else:
            allowed = alphabet[None, :] != inverse[prev_words[:, -1]][:, None]
        parent, letter = np.nonzero(allowed)
        words = np.concatenate([prev_words[parent], letter[:, None].astype(np.int16)], axis=1)
        mats = np.einsum("nij,njk->nik", prev_mats[parent], rots.letters[letter])
        letters.append(words)
        matrices.append(mats)
        angles.append(rotation_angles(mats))
        logger.info(f"Length {length}: {len(words)} words, min angle {float(np.min(angles[-1])):.3e}")

    table = WordTable(rots=rots, L=L, letters=tuple(letters), matrices=tuple(matrices), angles=tuple(angles))
    fitted = table.fit_angle_decay()
    if fitted is not None:
        logger.info(f"Fitted minimal-angle decay constant c'={fitted:.4f} over lengths 1..{L}")
    return table


def fixed_points(matrices: np.ndarray) -> np.ndarray:
    """Both antipodal fixed points of each rotation, shape (2n, 3)."""
    axes = rotation_axes(np.asarray(matrices, dtype=float).reshape(-1, 3, 3))
    return np.concatenate([axes, -axes])


def fixed_point_set(rots: RotationSet, L: int, budget: int = DEFAULT_WORD_BUDGET) -> np.ndarray:
    """Axis endpoints of every nontrivial reduced word of length <= L."""
    mats, _ = word_table(rots, L, budget).nontrivial()
    return fixed_points(mats)


def cap_area_fraction(radius: float) -> float:
    """Normalized area of a spherical cap of the given angular radius."""
    return (1.0 - math.cos(radius)) / 2.0


def exceptional_set_measure(points: np.ndarray, s: int) -> float:
    """Union bound for the normalized measure of E_s: one s^{-1/4}-cap per point, capped at 1."""
    if s < 1:
        raise ValueError(f"Degree must be positive, got {s}")
    return min(1.0, len(points) * cap_area_fraction(s ** -0.25))


def exceptional_set_fraction(points: np.ndarray, s: int, samples: int, rng: np.random.Generator) -> float:
    """Monte Carlo estimate of the normalized measure of the union of s^{-1/4}-caps."""
    if s < 1:
        raise ValueError(f"Degree must be positive, got {s}")
    if len(points) == 0:
        return 0.0
    draws = rng.standard_normal((samples, 3))
    draws /= np.linalg.norm(draws, axis=1, keepdims=True)
    chord = 2.0 * math.sin(s ** -0.25 / 2.0)
    distances, _ = cKDTree(points).query(draws, k=1)
    return float(np.mean(distances <= chord))


def _chord_to_angle(chord: np.ndarray) -> np.ndarray:
    return 2.0 * np.arcsin(np.clip(chord / 2.0, 0.0, 1.0))


@dataclass(frozen=True)
class OrbitSeparation:
    """Closest pair in an orbit ball; antipodal means word_b maps x near -word_a x."""

    distance: float
    word_a: Optional[str] = None
    word_b: Optional[str] = None
    antipodal: bool = False


def orbit_separation(
    rots: RotationSet,
    x: np.ndarray,
    n: int,
    budget: int = DEFAULT_WORD_BUDGET,
) -> OrbitSeparation:
    """
    Closest approach between distinct points of {w x : |w| <= n} and their antipodes.

    Raises:
        OrbitCollisionError: If two distinct words send x within 1e-13 of each other
        BudgetExceededError: If the orbit ball exceeds the word budget
    """
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x)
    if n == 0:
        return OrbitSeparation(distance=math.inf)

    table = word_table(rots, n, budget)
    mats, labels = table.nontrivial()
    mats = np.concatenate([np.eye(3)[None], mats])
    labels = np.concatenate([np.zeros((1, 2), dtype=int), labels])
    orbit = mats @ x
    tree = cKDTree(orbit)

    chords, idx = tree.query(orbit, k=2)
    # with exact duplicates the point itself may come second
    partner = np.where(idx[:, 0] == np.arange(len(orbit)), idx[:, 1], idx[:, 0])
    near = int(np.argmin(chords[:, 1]))
    best = OrbitSeparation(
        distance=float(_chord_to_angle(chords[near, 1])),
        word_a=table.name(*labels[near]),
        word_b=table.name(*labels[partner[near]]),
    )

    anti_chords, anti_idx = tree.query(-orbit, k=1)
    far = int(np.argmin(anti_chords))
    anti_distance = float(_chord_to_angle(anti_chords[far]))
    if anti_distance < best.distance:
        best = OrbitSeparation(
            distance=anti_distance,
            word_a=table.name(*labels[far]),
            word_b=table.name(*labels[anti_idx[far]]),
            antipodal=True,
        )

    if best.distance < ORBIT_COLLISION_TOL:
        raise OrbitCollisionError(
            f"Orbit collision at radius {n}: {best.word_a} and {best.word_b} "
            f"are {best.distance:.3e} apart",
            word_a=best.word_a,
            word_b=best.word_b,
        )
    return best


def min_orbit_separation(rots: RotationSet, x: np.ndarray, n: int, budget: int = DEFAULT_WORD_BUDGET) -> float:
    """Minimum great-circle distance in the orbit ball of radius n; +inf for n = 0."""
    return orbit_separation(rots, x, n, budget).distance


@dataclass(frozen=True)
class Certification:
    """Outcome of checking that B(z, s^{-1/2}) meets the 4T-orbit of x only in z."""

    T: int
    s: int
    radius: int
    capped: bool
    separation: float
    threshold: float
    word_a: Optional[str] = None
    word_b: Optional[str] = None
    collision: bool = False

    @property
    def certified(self) -> bool:
        return not self.collision and not self.capped and self.separation > self.threshold

    def describe(self) -> str:
        status = "certified" if self.certified else "not certified"
        text = (
            f"condition at T={self.T}, s={self.s} {status}: orbit radius {self.radius}, "
            f"separation {self.separation:.3e} vs s^(-1/2)={self.threshold:.3e}"
        )
        if self.capped:
            text += f" (radius capped below 4T={4 * self.T})"
        if not self.certified and self.word_a is not None:
            text += f"; closest words {self.word_a} and {self.word_b}"
        return text


def certify_condition(
    rots: RotationSet,
    x: np.ndarray,
    T: int,
    s: int,
    cap: Optional[int] = None,
    budget: int = DEFAULT_WORD_BUDGET,
) -> Certification:
    """
    Certify the orbit-separation condition for (T, s) at the point x.

    The orbit ball has radius 4T unless cap is smaller, in which case the
    report is marked capped and never counts as certified.
    """
    if s < 1:
        raise ValueError(f"Degree must be positive, got {s}")
    radius = 4 * T if cap is None else min(4 * T, cap)
    capped = radius < 4 * T
    threshold = s ** -0.5
    try:
        sep = orbit_separation(rots, x, radius, budget)
        report = Certification(
            T=T,
            s=s,
            radius=radius,
            capped=capped,
            separation=sep.distance,
            threshold=threshold,
            word_a=sep.word_a,
            word_b=sep.word_b,
        )
    except OrbitCollisionError as e:
        report = Certification(
            T=T,
            s=s,
            radius=radius,
            capped=capped,
            separation=0.0,
            threshold=threshold,
            word_a=e.word_a,
            word_b=e.word_b,
            collision=True,
        )
    if report.capped:
        logger.warning(report.describe())
    else:
        logger.info(report.describe())
    return report


def words_from_names(rots: RotationSet, names: Sequence[str]) -> List[np.ndarray]:
    """Product matrices of words written with the letter names of rots ('e' is the identity)."""
    lookup = {rots.letter_name(i): i for i in range(2 * rots.N)}
    result = []
    for name in names:
        mat = np.eye(3)
        for ch in "" if name == "e" else name:
            if ch not in lookup:
                raise ValueError(f"Unknown letter '{ch}' in word '{name}'")
            mat = mat @ rots.letters[lookup[ch]]
        result.append(mat)
    return result
