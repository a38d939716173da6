"""The arc graph and the non-backtracking operator T_q'."""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import List, Literal

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from .graph import MISSING, RegularGraph

logger = logging.getLogger(__name__)

DENSE_ARC_LIMIT = 512


@dataclass(frozen=True, eq=False)
class ArcGraph:
    """
    Directed edges of a graph with source, target and reversal maps.

    Arc ids enumerate the non-missing slots of the neighbor table row by
    row, so arc a leaves source[a] towards target[a].
    """

    q: int
    source: np.ndarray
    target: np.ndarray
    reverse: np.ndarray

    @property
    def n_arcs(self) -> int:
        return len(self.source)

    @cached_property
    def _by_source(self) -> List[np.ndarray]:
        buckets = defaultdict(list)
        for arc, v in enumerate(self.source):
            buckets[int(v)].append(arc)
        n_vertices = int(max(self.source.max(), self.target.max())) + 1 if self.n_arcs else 0
        return [np.array(buckets[v], dtype=np.int64) for v in range(n_vertices)]

    def successors(self, arc: int) -> np.ndarray:
        """Arcs b with b^- = a^+ and b != reverse(a)."""
        out = self._by_source[int(self.target[arc])]
        return out[out != self.reverse[arc]]

    @cached_property
    def nb_matrix(self) -> sparse.csr_matrix:
        """T_q' = (1/q) * non-backtracking adjacency, as a sparse matrix."""
        rows, cols = [], []
        for arc in range(self.n_arcs):
            succ = self.successors(arc)
            rows.extend([arc] * len(succ))
            cols.extend(succ.tolist())
        data = np.full(len(rows), 1.0 / self.q)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n_arcs, self.n_arcs))

    def begin_operator(self, k: int) -> sparse.csr_matrix:
        """B: (Bf)(a) = f(a^-)."""
        data = np.ones(self.n_arcs)
        return sparse.csr_matrix((data, (np.arange(self.n_arcs), self.source)), shape=(self.n_arcs, k))

    def end_operator(self, k: int) -> sparse.csr_matrix:
        """E: (Ef)(a) = f(a^+)."""
        data = np.ones(self.n_arcs)
        return sparse.csr_matrix((data, (np.arange(self.n_arcs), self.target)), shape=(self.n_arcs, k))

    def validate(self) -> List[str]:
        problems = []
        if np.any(self.reverse[self.reverse] != np.arange(self.n_arcs)):
            problems.append("reversal is not an involution")
        if np.any(self.reverse == np.arange(self.n_arcs)):
            problems.append("reversal has a fixed point")
        out_degrees = np.diff(self.nb_matrix.indptr)
        if np.any(out_degrees != self.q):
            problems.append(f"some arcs do not have exactly {self.q} successors")
        return problems


def arc_graph(g: RegularGraph) -> ArcGraph:
    """
    Build the arc graph of g.

    Parallel edges between x and y are paired in slot order; the two slots
    of a self-loop are paired with each other.
    """
    xs, slots = np.nonzero(g.adjacency != MISSING)
    source = xs.astype(np.int64)
    target = g.adjacency[xs, slots].astype(np.int64)

    slots_by_pair = defaultdict(list)
    for arc, (x, y) in enumerate(zip(source.tolist(), target.tolist())):
        slots_by_pair[(x, y)].append(arc)

    reverse = np.full(len(source), -1, dtype=np.int64)
    for (x, y), arcs in slots_by_pair.items():
        if x == y:
            if len(arcs) % 2:
                raise ValueError(f"Self-loop at vertex {x} occupies an odd number of slots")
            for a, b in zip(arcs[::2], arcs[1::2]):
                reverse[a], reverse[b] = b, a
        elif x < y:
            back = slots_by_pair.get((y, x), [])
            if len(back) != len(arcs):
                raise ValueError(f"Adjacency is not symmetric between {x} and {y}")
            for a, b in zip(arcs, back):
                reverse[a], reverse[b] = b, a

    return ArcGraph(q=g.q, source=source, target=target, reverse=reverse)


def nb_operator_apply(ag: ArcGraph, q: int, F: np.ndarray) -> np.ndarray:
    """
    T_q' F(a) = (1/q) sum over b with b^- = a^+, b != reverse(a) of F(b).

    Raises:
        ValueError: If F does not have one entry per arc
    """
    F = np.asarray(F)
    if F.shape[0] != ag.n_arcs:
        raise ValueError(f"Arc vector length {F.shape[0]} does not match arc count {ag.n_arcs}")
    if q == ag.q:
        return ag.nb_matrix @ F
    return (ag.nb_matrix * (ag.q / q)) @ F


def _project_out_constants(v: np.ndarray) -> np.ndarray:
    return v - v.mean(axis=0, keepdims=True)


def nb_norm_decay(
    ag: ArcGraph,
    q: int,
    kmax: int,
    method: Literal["auto", "dense", "iterative"] = "auto",
    tol: float = 1e-8,
) -> np.ndarray:
    """
    ||(T_q')^k|| restricted to the complement of span{B1, E1} for k = 0..kmax.

    B1 = E1 is the constant function, so the restriction is P (T_q')^k P
    with P the projection onto mean-zero arc functions. Small arc graphs
    use dense spectral norms; larger ones use ARPACK on a LinearOperator.

    Returns:
        Array of length kmax + 1; entry 0 is 1
    """
    n = ag.n_arcs
    if method == "auto":
        method = "dense" if n <= DENSE_ARC_LIMIT else "iterative"

    operator = ag.nb_matrix * (ag.q / q) if q != ag.q else ag.nb_matrix
    norms = np.ones(kmax + 1)

    if method == "dense":
        dense = operator.toarray()
        projector = np.eye(n) - np.full((n, n), 1.0 / n)
        power = projector.copy()
        for k in range(1, kmax + 1):
            power = dense @ power
            norms[k] = np.linalg.norm(projector @ power, ord=2)
        return norms

    transpose = operator.T.tocsr()
    rng = np.random.default_rng(0)
    v0 = _project_out_constants(rng.standard_normal(n))
    for k in range(1, kmax + 1):

        def matvec(v, k=k):
            u = _project_out_constants(np.asarray(v, dtype=float).reshape(n, -1))
            for _ in range(k):
                u = operator @ u
            return _project_out_constants(u)

        def rmatvec(v, k=k):
            u = _project_out_constants(np.asarray(v, dtype=float).reshape(n, -1))
            for _ in range(k):
                u = transpose @ u
            return _project_out_constants(u)

        linop = sparse_linalg.LinearOperator(
            (n, n), matvec=matvec, rmatvec=rmatvec, matmat=matvec, rmatmat=rmatvec, dtype=float
        )
        singular = sparse_linalg.svds(linop, k=1, tol=tol, v0=v0, return_singular_vectors=False)
        norms[k] = float(singular[0])
    return norms


@dataclass(frozen=True)
class DecayFit:
    """Log-linear fit of a decay sequence."""

    slope: float
    intercept: float
    constant: float
    raw_slope: float
    growth_constant: float

    def decays(self, margin: float = 0.0) -> bool:
        return self.slope < -margin


def fit_decay(norms: np.ndarray, beta: float, k_min: int = 1) -> DecayFit:
    """
    Fit log(norm_k / (k+1)) against k for k >= k_min.

    The (k+1) factor is the linear growth of U_k(lambda/2) at |lambda| = 2,
    so the fitted slope tracks -beta. raw_slope is the plain fit of
    log(norm_k). The constant C = max_k norm_k e^{beta k} is the smallest C
    with norm_k <= C e^{-beta k}; growth_constant = max_k norm_k e^{beta k} / (k+1)
    is the smallest C with norm_k <= C (k+1) e^{-beta k}.
    """
    norms = np.asarray(norms, dtype=float)
    ks = np.arange(len(norms))
    sel = ks >= k_min
    positive = norms[sel] > 0
    if np.count_nonzero(positive) < 2:
        return DecayFit(
            slope=-math.inf,
            intercept=-math.inf,
            constant=float(np.max(norms)),
            raw_slope=-math.inf,
            growth_constant=float(np.max(norms / (ks + 1))),
        )
    x = ks[sel][positive]
    y = np.log(norms[sel][positive] / (x + 1))
    slope, intercept = np.polyfit(x, y, 1)
    raw_slope = np.polyfit(x, np.log(norms[sel][positive]), 1)[0]
    weighted = norms * np.exp(beta * ks)
    return DecayFit(
        slope=float(slope),
        intercept=float(intercept),
        constant=float(np.max(weighted)),
        raw_slope=float(raw_slope),
        growth_constant=float(np.max(weighted / (ks + 1))),
    )
