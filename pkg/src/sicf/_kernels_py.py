"""NumPy fallback for the compiled kernels.

Must stay numerically interchangeable with `_kernels.pyx`: both compute
squared distances in float64 and take a single sqrt at the end, so results
agree to rounding noise only.
"""

import numpy as np


def min_dist_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Per-row min Euclidean distance from rows of a (p, d) to rows of b (q, d)."""
    diff = a[:, None, :] - b[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    return np.sqrt(sq.min(axis=1))


def lcs_length(x: np.ndarray, y: np.ndarray) -> int:
    """Longest common subsequence length for two int sequences.

    Row-at-a-time DP. Within a row the in-row dependency dp[i][j-1] is
    folded in with a running max, valid because DP rows are non-decreasing.
    """
    n = len(y)
    prev = np.zeros(n + 1, dtype=np.int64)
    for xi in x:
        matched = np.where(y == xi, prev[:-1] + 1, 0)
        curr = np.zeros(n + 1, dtype=np.int64)
        np.maximum.accumulate(np.maximum(prev[1:], matched), out=curr[1:])
        prev = curr
    return int(prev[n])
