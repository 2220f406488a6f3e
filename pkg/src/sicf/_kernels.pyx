# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: pairwise min-distance rows and LCS length.

Interchangeable with `_kernels_py`; `backend` picks one at import time.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def min_dist_rows(double[:, ::1] a, double[:, ::1] b):
    """Per-row min Euclidean distance from rows of a (p, d) to rows of b (q, d)."""
    cdef Py_ssize_t p = a.shape[0]
    cdef Py_ssize_t q = b.shape[0]
    cdef Py_ssize_t d = a.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double best, acc, diff
    out = np.empty(p, dtype=np.float64)
    cdef double[::1] out_view = out
    for i in range(p):
        best = -1.0
        for j in range(q):
            acc = 0.0
            for k in range(d):
                diff = a[i, k] - b[j, k]
                acc += diff * diff
            if best < 0.0 or acc < best:
                best = acc
        out_view[i] = sqrt(best)
    return out


def lcs_length(cnp.int64_t[::1] x, cnp.int64_t[::1] y):
    """Longest common subsequence length for two int sequences (two-row DP)."""
    cdef Py_ssize_t m = x.shape[0]
    cdef Py_ssize_t n = y.shape[0]
    cdef Py_ssize_t i, j
    cdef cnp.int64_t up, left, diag
    prev_arr = np.zeros(n + 1, dtype=np.int64)
    curr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] prev = prev_arr
    cdef cnp.int64_t[::1] curr = curr_arr
    for i in range(m):
        for j in range(1, n + 1):
            if x[i] == y[j - 1]:
                diag = prev[j - 1] + 1
            else:
                diag = 0
            up = prev[j]
            left = curr[j - 1]
            curr[j] = max(diag, max(up, left))
        prev, curr = curr, prev
        for j in range(n + 1):
            curr[j] = 0
    return int(prev[n])
