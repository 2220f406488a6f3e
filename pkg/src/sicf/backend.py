"""Kernel backend selection.

Prefers the compiled extension when it imported cleanly; falls back to the
NumPy implementation otherwise. Set SICF_PURE_PYTHON=1 to force the
fallback (the benchmark and the backend-parity tests rely on this).
"""

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None

if _kernels is not None and not os.environ.get("SICF_PURE_PYTHON"):
    BACKEND = "compiled"
    _impl = _kernels
else:
    BACKEND = "python"
    _impl = _kernels_py


def min_dist_rows(a, b) -> np.ndarray:
    """Per-row min Euclidean distance from rows of a (p, d) to rows of b (q, d)."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise ValueError(f"expected (p, d) and (q, d), got {a.shape} and {b.shape}")
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise ValueError("min_dist_rows requires at least one row on each side")
    return np.asarray(_impl.min_dist_rows(a, b))


def lcs_length(x, y) -> int:
    """Longest common subsequence length for two integer sequences."""
    x = np.ascontiguousarray(x, dtype=np.int64)
    y = np.ascontiguousarray(y, dtype=np.int64)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("lcs_length expects 1-D integer sequences")
    if x.size == 0 or y.size == 0:
        return 0
    return int(_impl.lcs_length(x, y))
