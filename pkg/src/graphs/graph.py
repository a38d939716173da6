"""Regular graphs: representation, generators and the plain-text file format."""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ..utils.artifacts import atomic_write_text
from ..utils.errors import SamplingError

logger = logging.getLogger(__name__)

MISSING = -1
MAX_RESAMPLES = 1000


@dataclass(frozen=True, eq=False)
class RegularGraph:
    """
    A (q+1)-regular multigraph stored as a k x (q+1) neighbor table.

    Multi-edges and self-loops are representable (a loop at x occupies two
    slots of x). Truncated graphs such as tree balls pad missing slots with
    -1; validate() reports them, so they never pass as experiment graphs.
    """

    q: int
    adjacency: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.adjacency, dtype=np.int64)
        if table.ndim != 2 or table.shape[1] != self.q + 1:
            raise ValueError(
                f"Adjacency must have shape (k, {self.q + 1}), got {table.shape}"
            )
        if table.size and (table.max() >= table.shape[0] or table.min() < MISSING):
            raise ValueError("Adjacency entries must be vertex indices or -1")
        table.setflags(write=False)
        object.__setattr__(self, "adjacency", table)

    @property
    def k(self) -> int:
        return self.adjacency.shape[0]

    @property
    def degree(self) -> int:
        return self.q + 1

    def neighbors(self, x: int) -> np.ndarray:
        row = self.adjacency[x]
        return row[row != MISSING]

    @cached_property
    def degrees(self) -> np.ndarray:
        return (self.adjacency != MISSING).sum(axis=1)

    @cached_property
    def adjacency_matrix(self) -> sparse.csr_matrix:
        """Sparse adjacency with multi-edges counted with multiplicity."""
        rows, slots = np.nonzero(self.adjacency != MISSING)
        cols = self.adjacency[rows, slots]
        data = np.ones(len(rows))
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.k, self.k))

    def is_regular(self) -> bool:
        return bool(np.all(self.degrees == self.degree))

    def is_symmetric(self) -> bool:
        diff = self.adjacency_matrix - self.adjacency_matrix.T
        return diff.count_nonzero() == 0

    def is_simple(self) -> bool:
        if np.any(self.adjacency == np.arange(self.k)[:, None]):
            return False
        return bool(self.adjacency_matrix.max() <= 1) if self.k else True

    def is_connected(self) -> bool:
        if self.k == 0:
            return False
        n_components, _ = csgraph.connected_components(self.adjacency_matrix, directed=False)
        return n_components == 1

    def distances_from(self, x: int) -> np.ndarray:
        """Graph distances from x (unreachable vertices get -1)."""
        dist = csgraph.shortest_path(self.adjacency_matrix, unweighted=True, indices=x)
        dist[np.isinf(dist)] = -1
        return dist.astype(np.int64)

    def validate(self) -> List[str]:
        """
        Check the invariants required of experiment graphs.

        Returns:
            Human-readable problems; empty when the graph is a connected,
            simple, (q+1)-regular graph
        """
        problems = []
        if not self.is_regular():
            bad = int(np.sum(self.degrees != self.degree))
            problems.append(f"{bad} vertices do not have degree {self.degree}")
        if not self.is_symmetric():
            problems.append("adjacency is not symmetric")
        if not self.is_simple():
            problems.append("graph has self-loops or multi-edges")
        if not self.is_connected():
            problems.append("graph is not connected")
        return problems

    def edges(self) -> List[Tuple[int, int]]:
        """Undirected edges x <= y with multiplicity."""
        result = []
        for x in range(self.k):
            for y in self.neighbors(x):
                if x < y:
                    result.append((x, int(y)))
        loops = [x for x in range(self.k) for y in self.neighbors(x) if y == x]
        result.extend((x, x) for x in sorted(loops)[::2])
        return sorted(result)


def from_edges(k: int, q: int, edges: Iterable[Tuple[int, int]]) -> RegularGraph:
    """Build a neighbor table from undirected edges; short rows are padded with -1."""
    rows: List[List[int]] = [[] for _ in range(k)]
    for x, y in edges:
        rows[x].append(y)
        rows[y].append(x)
    table = np.full((k, q + 1), MISSING, dtype=np.int64)
    for x, nbrs in enumerate(rows):
        if len(nbrs) > q + 1:
            raise ValueError(f"Vertex {x} has {len(nbrs)} neighbors, more than {q + 1}")
        table[x, : len(nbrs)] = sorted(nbrs)
    return RegularGraph(q=q, adjacency=table)


def random_regular(k: int, q: int, seed: Optional[int] = None) -> RegularGraph:
    """
    Sample a simple connected (q+1)-regular graph on k vertices.

    Configuration model: pair the k(q+1) stubs by a random permutation and
    reject outcomes with self-loops, multi-edges or more than one component.

    Args:
        k: Number of vertices
        q: Degree minus one
        seed: Seed for numpy's default_rng; equal seeds give equal graphs

    Returns:
        RegularGraph

    Raises:
        ValueError: If k(q+1) is odd or k <= q+1
        SamplingError: If no acceptable pairing is found in MAX_RESAMPLES tries
    """
    d = q + 1
    if (k * d) % 2:
        raise ValueError(f"k*(q+1) must be even, got k={k}, q={q}")
    if k <= d:
        raise ValueError(f"Need k > q+1 vertices for a simple graph, got k={k}, q={q}")

    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(k), d)
    for attempt in range(1, MAX_RESAMPLES + 1):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        lo, hi = pairs.min(axis=1), pairs.max(axis=1)
        if np.any(lo == hi):
            continue
        codes = lo * k + hi
        if np.unique(codes).size != codes.size:
            continue
        graph = from_edges(k, q, zip(lo.tolist(), hi.tolist()))
        if not graph.is_connected():
            continue
        logger.debug(f"random_regular(k={k}, q={q}) accepted after {attempt} attempts")
        return graph

    raise SamplingError(
        f"No simple connected {d}-regular graph on {k} vertices after {MAX_RESAMPLES} resamples"
    )


def complete_graph(k: int) -> RegularGraph:
    """K_k as a (k-1)-regular graph, q = k - 2."""
    edges = [(x, y) for x in range(k) for y in range(x + 1, k)]
    return from_edges(k, k - 2, edges)


def cycle_graph(k: int) -> RegularGraph:
    """The k-cycle (q = 1)."""
    return from_edges(k, 1, [(x, (x + 1) % k) for x in range(k)])


def complete_bipartite(q: int) -> RegularGraph:
    """K_{q+1,q+1}, a bipartite (q+1)-regular graph."""
    d = q + 1
    return from_edges(2 * d, q, [(x, d + y) for x in range(d) for y in range(d)])


def tree_ball(q: int, radius: int) -> RegularGraph:
    """
    The ball of the given radius in the (q+1)-regular tree.

    Vertex 0 is the center and vertices are numbered in BFS order, so
    depth is nondecreasing in the index. Leaves keep a single neighbor.
    """
    edges = []
    frontier = [0]
    next_id = 1
    for depth in range(radius):
        new_frontier = []
        for v in frontier:
            children = q + 1 if depth == 0 else q
            for _ in range(children):
                edges.append((v, next_id))
                new_frontier.append(next_id)
                next_id += 1
        frontier = new_frontier
    return from_edges(next_id, q, edges)


def tree_depths(g: RegularGraph, root: int = 0) -> np.ndarray:
    """BFS depth of every vertex from root."""
    depth = np.full(g.k, -1, dtype=np.int64)
    depth[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                queue.append(w)
    return depth


def format_graph(g: RegularGraph) -> str:
    """Serialize: line 1 'k q', then one line of q+1 neighbor indices per vertex."""
    lines = [f"{g.k} {g.q}"]
    lines.extend(" ".join(str(int(y)) for y in row) for row in g.adjacency)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> RegularGraph:
    """
    Parse the plain-text graph format.

    Raises:
        ValueError: If the header or any row is malformed
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("Empty graph file")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"Graph header must be 'k q', got: {lines[0]!r}")
    k, q = int(header[0]), int(header[1])
    rows = lines[1:]
    if len(rows) != k:
        raise ValueError(f"Expected {k} adjacency rows, found {len(rows)}")
    table: Sequence[List[int]] = [[int(tok) for tok in row.split()] for row in rows]
    for x, row in enumerate(table):
        if len(row) != q + 1:
            raise ValueError(f"Row {x} has {len(row)} entries, expected {q + 1}")
    return RegularGraph(q=q, adjacency=np.array(table, dtype=np.int64).reshape(k, q + 1))


def read_graph(path: str | Path) -> RegularGraph:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Graph file not found: {path}")
    return parse_graph(path.read_text())


def write_graph(g: RegularGraph, path: str | Path) -> None:
    atomic_write_text(Path(path), format_graph(g))
