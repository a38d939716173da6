"""Injectivity radius and the Benjamini-Schramm (BST) profile."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .graph import RegularGraph


def injectivity_radius(g: RegularGraph, x: int, cap: Optional[int] = None) -> int:
    """
    Largest rho such that the ball B(x, rho) is a tree.

    B(x, rho) holds the edges with an endpoint at distance < rho. The BFS
    expands one layer at a time, skipping a single occurrence of the edge
    back to the parent; reaching a vertex already seen closes a cycle
    inside B(x, d+1) and ends the search at d. An exhausted finite tree
    reports its depth from x.

    Args:
        g: Graph
        x: Base vertex
        cap: Stop and return cap once the ball of radius cap is known to be a tree

    Returns:
        The injectivity radius (at most cap when given)
    """
    seen = {x}
    layer: List[Tuple[int, int]] = [(x, -1)]
    depth = 0
    while True:
        if cap is not None and depth >= cap:
            return cap
        new_layer: List[Tuple[int, int]] = []
        for v, parent in layer:
            skipped_parent = False
            for w in g.neighbors(v):
                w = int(w)
                if w == parent and not skipped_parent:
                    skipped_parent = True
                    continue
                if w in seen:
                    return depth
                seen.add(w)
                new_layer.append((w, v))
        if not new_layer:
            return depth
        layer = new_layer
        depth += 1


def injectivity_radii(g: RegularGraph, cap: Optional[int] = None) -> np.ndarray:
    """injectivity_radius for every vertex."""
    return np.array([injectivity_radius(g, x, cap) for x in range(g.k)], dtype=np.int64)


def kept_rows(g: RegularGraph, T: int) -> np.ndarray:
    """Boolean mask of vertices with rho(x) > 4T (the rows kept in A_T')."""
    return injectivity_radii(g, cap=4 * T + 1) > 4 * T


@dataclass(frozen=True)
class BstProfile:
    """Counts |{x : rho(x) < R}| for R = 1..R_max and alpha = count / k."""

    k: int
    counts: Tuple[int, ...]

    @property
    def r_max(self) -> int:
        return len(self.counts)

    def count(self, R: int) -> int:
        return self.counts[R - 1]

    def alpha(self, R: int) -> float:
        return self.count(R) / self.k

    def pairs(self) -> List[Tuple[int, float]]:
        """(R, alpha_R) for R = 1..R_max."""
        return [(R, self.alpha(R)) for R in range(1, self.r_max + 1)]


def bst_profile(g: RegularGraph, R_max: int) -> BstProfile:
    """Exact per-radius counts of vertices with small injectivity radius."""
    radii = injectivity_radii(g, cap=R_max)
    counts = tuple(int(np.sum(radii < R)) for R in range(1, R_max + 1))
    return BstProfile(k=g.k, counts=counts)
