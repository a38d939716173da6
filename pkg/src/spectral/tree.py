"""Exact quantities on the (q+1)-regular tree."""

import numpy as np


def tree_kernel_value(q: int, n: int, dist: int) -> float:
    """
    Value of P_n(T_q/2) delta_0 at a vertex at distance dist from 0.

    Args:
        q: Branching number (degree q+1), at least 2
        n: Positive even propagation time
        dist: Tree distance from the source vertex

    Returns:
        0 for odd dist or dist > n, 1/(2q^{n/2}) at dist = n and
        (1-q)/(2q^{n/2}) for even dist < n

    Raises:
        ValueError: If n is odd or not positive
    """
    if n <= 0 or n % 2:
        raise ValueError(f"Propagation time n must be a positive even integer, got {n}")
    if dist < 0:
        raise ValueError(f"Distance must be nonnegative, got {dist}")

    if dist % 2 or dist > n:
        return 0.0
    scale = 2.0 * q ** (n / 2)
    if dist == n:
        return 1.0 / scale
    return (1.0 - q) / scale


def tree_sphere_size(q: int, d: int) -> int:
    """Number of vertices at distance d from a vertex of the (q+1)-regular tree."""
    if d == 0:
        return 1
    return (q + 1) * q ** (d - 1)


def tree_closed_walks(q: int, n: int) -> int:
    """
    Number of walks of length n from a tree vertex back to itself.

    Dynamic program over the distance-from-root profile: from the root
    there are q+1 ways out, elsewhere one way back and q ways out.
    """
    if n < 0:
        raise ValueError(f"Walk length must be nonnegative, got {n}")
    if n % 2:
        return 0

    profile = [1] + [0] * n
    for _ in range(n):
        nxt = [0] * (n + 1)
        for d, count in enumerate(profile):
            if not count:
                continue
            if d == 0:
                nxt[1] += (q + 1) * count
            else:
                nxt[d - 1] += count
                if d + 1 <= n:
                    nxt[d + 1] += q * count
        profile = nxt
    return profile[0]


def tree_kernel_profile(q: int, n: int, max_dist: int) -> np.ndarray:
    """tree_kernel_value for dist = 0..max_dist as an array."""
    return np.array([tree_kernel_value(q, n, d) for d in range(max_dist + 1)])
