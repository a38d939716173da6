"""The operator T_q on a graph, Chebyshev propagation and time averages."""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy import sparse

from .graph import RegularGraph


@dataclass(frozen=True, eq=False)
class Observable:
    """A real function on the vertices, used as a multiplication operator."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError(f"Observable values must be a vector, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    @property
    def l2_norm(self) -> float:
        """Unnormalized l2(G) norm."""
        return float(np.linalg.norm(self.values))

    @property
    def l2_norm_normalized(self) -> float:
        """l2 norm for the uniform probability measure on vertices."""
        return self.l2_norm / math.sqrt(len(self.values)) if self.values.size else 0.0

    def validate(self, atol: float = 1e-10) -> List[str]:
        """Problems preventing use as an experiment observable (mean zero, sup-norm <= 1)."""
        problems = []
        total = float(np.sum(self.values))
        if abs(total) > atol:
            problems.append(f"observable sum is {total:.3e}, expected 0")
        if self.sup_norm > 1.0 + atol:
            problems.append(f"observable sup-norm is {self.sup_norm:.6g}, expected <= 1")
        return problems

    def require_valid(self) -> None:
        problems = self.validate()
        if problems:
            raise ValueError("Invalid observable: " + "; ".join(problems))

    @classmethod
    def random(cls, k: int, rng: np.random.Generator) -> "Observable":
        """Gaussian vector projected to mean zero and scaled to sup-norm 1."""
        values = rng.standard_normal(k)
        values -= values.mean()
        values /= np.max(np.abs(values))
        return cls(values)


def tq_matrix(g: RegularGraph) -> sparse.csr_matrix:
    """Sparse matrix of T_q = q^{-1/2} * adjacency."""
    return (g.adjacency_matrix / math.sqrt(g.q)).tocsr()


def tq_apply(g: RegularGraph, v: np.ndarray) -> np.ndarray:
    """
    (T_q v)(x) = q^{-1/2} sum over neighbors y of v(y), with multiplicity.

    Raises:
        ValueError: If v does not have one entry per vertex
    """
    v = np.asarray(v)
    if v.shape[0] != g.k:
        raise ValueError(f"Vector length {v.shape[0]} does not match vertex count {g.k}")
    return tq_matrix(g) @ v


def chebyshev_propagate(g: RegularGraph, n: int, v: np.ndarray) -> np.ndarray:
    """
    P_n(T_q/2) v by the recurrence u_{m+1} = T_q u_m - u_{m-1}.

    Works column-wise when v is a matrix.
    """
    if n < 0:
        raise ValueError(f"Propagation time must be nonnegative, got {n}")
    v = np.asarray(v, dtype=float)
    if v.shape[0] != g.k:
        raise ValueError(f"Vector length {v.shape[0]} does not match vertex count {g.k}")
    if n == 0:
        return v.copy()

    tq = tq_matrix(g)
    prev, curr = v, (tq @ v) / 2.0
    for _ in range(n - 1):
        prev, curr = curr, tq @ curr - prev
    return curr


def chebyshev_even_operators(g: RegularGraph, T: int) -> List[np.ndarray]:
    """Dense matrices P_2(T_q/2), P_4(T_q/2), ..., P_2T(T_q/2)."""
    tq = tq_matrix(g)
    prev = np.eye(g.k)
    curr = tq.toarray() / 2.0
    result = []
    for m in range(1, 2 * T):
        prev, curr = curr, tq @ curr - prev
        if (m + 1) % 2 == 0:
            result.append(np.asarray(curr))
    return result


def time_averaged_operator(
    g: RegularGraph,
    a: Observable,
    T: int,
    row_mask: Optional[np.ndarray] = None,
    dense_limit: int = 4096,
) -> np.ndarray:
    """
    A_T = (1/T) sum_{n=1}^T P_2n(T_q/2) M_a P_2n(T_q/2) as a dense matrix.

    Args:
        g: Graph
        a: Mean-zero observable with sup-norm at most 1
        T: Number of averaged times
        row_mask: Optional boolean mask of rows to keep; other rows are zeroed
        dense_limit: Largest vertex count accepted

    Raises:
        ValueError: On invalid observable, T < 1, or k above dense_limit
    """
    a.require_valid()
    if T < 1:
        raise ValueError(f"T must be positive, got {T}")
    if g.k > dense_limit:
        raise ValueError(f"Vertex count {g.k} exceeds dense limit {dense_limit}")
    if len(a.values) != g.k:
        raise ValueError(f"Observable length {len(a.values)} does not match vertex count {g.k}")

    total = np.zeros((g.k, g.k))
    for p in chebyshev_even_operators(g, T):
        total += p @ (a.values[:, None] * p)
    total /= T
    if row_mask is not None:
        total[~np.asarray(row_mask, dtype=bool)] = 0.0
    return total


def hs_norm(m: np.ndarray) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(np.asarray(m), ord=None)) if np.size(m) else 0.0
