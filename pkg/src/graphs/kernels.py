"""
Kernel decomposition of P_2n M_a P_2n through the S-operators.

For x with injectivity radius above 4T the ball B(x, 4T) lifts
isometrically to the tree, so sums over E_{2j,2k}(x, y) are computed on
the BFS tree rooted at x. The vertices z at distance 2j from x and 2k
from y hang below the vertex w of the segment [x, y] at depth l + j - k,
outside the branch of w leading to y.
"""

from typing import Dict, Optional, Tuple

import numpy as np

from .graph import RegularGraph
from .injectivity import kept_rows
from .operators import Observable


def _local_tree(g: RegularGraph, x: int, radius: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """BFS tree of radius `radius` at x: (graph vertex, parent index, depth) per node."""
    nodes = [x]
    parents = [-1]
    depths = [0]
    start, end = 0, 1
    for depth in range(radius):
        for idx in range(start, end):
            v = nodes[idx]
            parent_vertex = nodes[parents[idx]] if parents[idx] >= 0 else None
            skipped = False
            for w in g.neighbors(v):
                w = int(w)
                if w == parent_vertex and not skipped:
                    skipped = True
                    continue
                nodes.append(w)
                parents.append(idx)
                depths.append(depth + 1)
        start, end = end, len(nodes)
    return np.array(nodes), np.array(parents), np.array(depths)


def _level_subtree_sums(parents: np.ndarray, depths: np.ndarray, weights: np.ndarray, level: int) -> np.ndarray:
    """For every node, the sum of weights over its descendants at depth `level`."""
    sums = np.where(depths == level, weights, 0.0)
    for depth in range(level, 0, -1):
        idx = np.nonzero(depths == depth)[0]
        np.add.at(sums, parents[idx], sums[idx])
    return sums


def _ancestors(parents: np.ndarray, idx: np.ndarray, steps: int) -> np.ndarray:
    for _ in range(steps):
        idx = parents[idx]
    return idx


def _s_row(
    nodes: np.ndarray,
    parents: np.ndarray,
    depths: np.ndarray,
    a_local: np.ndarray,
    j: int,
    k: int,
    l: int,
    k_vertices: int,
    cache: Dict[int, np.ndarray],
) -> np.ndarray:
    row = np.zeros(k_vertices)
    t = l + j - k
    if t < 0 or t > min(2 * l, 2 * j):
        return row
    if j not in cache:
        cache[j] = _level_subtree_sums(parents, depths, a_local, 2 * j)
    sub = cache[j]

    ys = np.nonzero(depths == 2 * l)[0]
    if ys.size == 0:
        return row
    w = _ancestors(parents, ys, 2 * l - t)
    values = sub[w].copy()
    if t < 2 * l:
        c = _ancestors(parents, ys, 2 * l - t - 1)
        values -= sub[c]
    np.add.at(row, nodes[ys], values)
    return row


def build_S_operator(
    g: RegularGraph,
    a: Observable,
    j: int,
    k: int,
    l: int,
    T: int,
    rows: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Matrix of S~_{2j,2k,2l}: 1{d(x,y)=2l} * sum over E_{2j,2k}(x,y) of a(z).

    Rows with injectivity radius <= 4T are zeroed.

    Args:
        g: Graph
        a: Observable
        j, k: Half-distances from x and from y, both at most T
        l: Half-distance between x and y
        T: Time horizon fixing the kept rows
        rows: Optional precomputed kept_rows(g, T) mask

    Raises:
        ValueError: If j or k exceeds T
    """
    if j > T or k > T or min(j, k, l) < 0:
        raise ValueError(f"Need 0 <= j, k <= T and l >= 0, got j={j}, k={k}, l={l}, T={T}")
    matrix = np.zeros((g.k, g.k))
    if l > j + k:
        return matrix
    keep = kept_rows(g, T) if rows is None else rows
    radius = max(2 * l, 2 * j)
    for x in np.nonzero(keep)[0]:
        nodes, parents, depths = _local_tree(g, int(x), radius)
        matrix[x] = _s_row(nodes, parents, depths, a.values[nodes], j, k, l, g.k, {})
    return matrix


def kernel_coefficient(q: int, j: int, k: int, n: int) -> float:
    """c(j, k) / q^{2n} in the expansion of K_2n."""
    if j == n and k == n:
        c = 0.25
    elif j == n or k == n:
        c = (1 - q) / 4.0
    else:
        c = (1 - q) ** 2 / 4.0
    return c / q ** (2 * n)


def k2n_kernel_rows(g: RegularGraph, a: Observable, n: int, rows: np.ndarray) -> np.ndarray:
    """
    Rows of the kernel of P_2n M_a P_2n rebuilt from E_{2j,2k} sums.

    Only meaningful for rows whose ball of radius 4n is a ball of the
    regular tree.

    Returns:
        Array of shape (len(rows), k)
    """
    result = np.zeros((len(rows), g.k))
    for i, x in enumerate(rows):
        nodes, parents, depths = _local_tree(g, int(x), 4 * n)
        a_local = a.values[nodes]
        cache: Dict[int, np.ndarray] = {}
        for j in range(n + 1):
            for k in range(n + 1):
                coeff = kernel_coefficient(g.q, j, k, n)
                for l in range(abs(j - k), j + k + 1):
                    result[i] += coeff * _s_row(nodes, parents, depths, a_local, j, k, l, g.k, cache)
    return result
