"""Chebyshev polynomials and the transfer matrices built from them."""

import math

import numpy as np
from numpy.typing import ArrayLike


def chebyshev_first(n: int, x: ArrayLike) -> np.ndarray | float:
    """
    Evaluate the Chebyshev polynomial of the first kind P_n at x.

    Uses the three-term recurrence P_{n+1} = 2x P_n - P_{n-1}, which stays
    exact for |x| > 1 where the trigonometric form does not apply.

    Args:
        n: Nonnegative degree
        x: Scalar or array of evaluation points

    Returns:
        P_n(x), a float for scalar input

    Raises:
        ValueError: If n is negative
    """
    if n < 0:
        raise ValueError(f"Chebyshev degree must be nonnegative, got {n}")

    x_arr = np.asarray(x, dtype=float)
    prev = np.ones_like(x_arr)
    if n == 0:
        return _scalar_or_array(prev, x)

    curr = x_arr.copy()
    for _ in range(n - 1):
        prev, curr = curr, 2.0 * x_arr * curr - prev
    return _scalar_or_array(curr, x)


def chebyshev_second(n: int, x: ArrayLike) -> np.ndarray | float:
    """
    Evaluate the Chebyshev polynomial of the second kind U_n at x.

    U_0 = 1, U_1 = 2x, U_{n+1} = 2x U_n - U_{n-1}. Negative degrees follow
    the same recurrence backwards (U_{-1} = 0, U_{-2} = -1).

    Args:
        n: Degree, at least -2
        x: Scalar or array of evaluation points

    Returns:
        U_n(x)
    """
    x_arr = np.asarray(x, dtype=float)
    if n == -2:
        return _scalar_or_array(-np.ones_like(x_arr), x)
    if n == -1:
        return _scalar_or_array(np.zeros_like(x_arr), x)
    if n < -2:
        raise ValueError(f"Chebyshev-U degree must be at least -2, got {n}")

    prev = np.zeros_like(x_arr)
    curr = np.ones_like(x_arr)
    for _ in range(n):
        prev, curr = curr, 2.0 * x_arr * curr - prev
    return _scalar_or_array(curr, x)


def chebyshev_first_table(n_max: int, x: ArrayLike) -> np.ndarray:
    """Return the stacked values P_0(x), ..., P_{n_max}(x) along axis 0."""
    x_arr = np.asarray(x, dtype=float)
    table = np.empty((n_max + 1,) + x_arr.shape)
    table[0] = 1.0
    if n_max >= 1:
        table[1] = x_arr
    for m in range(1, n_max):
        table[m + 1] = 2.0 * x_arr * table[m] - table[m - 1]
    return table


def avg_cos_square(theta: float, T: int) -> float:
    """
    Average of cos^2(n theta) over n = 1..T.

    The closed form (2T-1)/(4T) + sin((2T+1)theta)/(4T sin theta) is used
    away from theta in {0, pi}; there the quotient is 0/0 and the sum is
    evaluated directly.

    Args:
        theta: Angle
        T: Number of terms (positive)

    Returns:
        (1/T) * sum_{n=1}^T cos^2(n theta)
    """
    if T < 1:
        raise ValueError(f"T must be positive, got {T}")

    sin_theta = math.sin(theta)
    if abs(sin_theta) < 1e-8:
        n = np.arange(1, T + 1)
        return float(np.mean(np.cos(n * theta) ** 2))
    return (2 * T - 1) / (4 * T) + math.sin((2 * T + 1) * theta) / (4 * T * sin_theta)


def avg_cos_square_grid(theta: np.ndarray, T: int) -> np.ndarray:
    """Vectorized avg_cos_square over an array of angles."""
    theta = np.asarray(theta, dtype=float)
    sin_theta = np.sin(theta)
    near_pole = np.abs(sin_theta) < 1e-8
    safe_sin = np.where(near_pole, 1.0, sin_theta)
    closed = (2 * T - 1) / (4 * T) + np.sin((2 * T + 1) * theta) / (4 * T * safe_sin)
    if np.any(near_pole):
        n = np.arange(1, T + 1)
        direct = np.mean(np.cos(np.outer(theta[near_pole], n)) ** 2, axis=1)
        closed[near_pole] = direct
    return closed


def transfer_matrix_power(lam: float, n: int) -> np.ndarray:
    """Return [[0, -1], [1, lam]]^n."""
    base = np.array([[0.0, -1.0], [1.0, lam]])
    return np.linalg.matrix_power(base, n)


def chebyshev_u_matrix(lam: float, n: int) -> np.ndarray:
    """Return [[-U_{n-2}, -U_{n-1}], [U_{n-1}, U_n]] evaluated at lam/2."""
    half = lam / 2.0
    return np.array(
        [
            [-chebyshev_second(n - 2, half), -chebyshev_second(n - 1, half)],
            [chebyshev_second(n - 1, half), chebyshev_second(n, half)],
        ]
    )


def nb_block(lam: float, q: int) -> np.ndarray:
    """
    The action of the non-backtracking operator on span{Bw, Ew}.

    For a T_q eigenfunction w with eigenvalue lam, in the ordered basis
    (Bw, Ew) the matrix is [[0, -1/q], [1, lam/sqrt(q)]].
    """
    return np.array([[0.0, -1.0 / q], [1.0, lam / math.sqrt(q)]])


def nb_block_conjugated(lam: float, q: int) -> np.ndarray:
    """Conjugate nb_block by diag(q^{1/4}, q^{-1/4}); equals (1/sqrt q)[[0,-1],[1,lam]]."""
    d = np.diag([q**0.25, q**-0.25])
    d_inv = np.diag([q**-0.25, q**0.25])
    return d @ nb_block(lam, q) @ d_inv


def _scalar_or_array(values: np.ndarray, original: ArrayLike) -> np.ndarray | float:
    if np.ndim(original) == 0:
        return float(values)
    return values


def time_average_weights(eigenvalues: ArrayLike, T: int) -> np.ndarray:
    """
    W_ij = (1/T) sum_{n=1}^T P_2n(lambda_i/2) P_2n(lambda_j/2).

    In an eigenbasis of T_q, the time average of P_2n M P_2n is W o M.
    """
    table = chebyshev_first_table(2 * T, np.asarray(eigenvalues, dtype=float) / 2.0)
    even = table[2::2]
    return (even.T @ even) / T
