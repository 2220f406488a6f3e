"""Collapse a quality matrix to one scalar.

Three methods: plain mean of the raw matrix, a multi-label binary
uncertainty over the min-max normalized matrix (candidates act as the
ensemble, each column is one label), and their product. Entropies use the
natural log; only relative order matters downstream.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .scoring import QualityMatrix

PHI_MEAN = "mean"
PHI_BNN = "bnn"
PHI_M_BNN = "m_bnn"
PHI_METHODS = (PHI_MEAN, PHI_BNN, PHI_M_BNN)

BNN_PREDICTIVE = "predictive"
BNN_ALEATORIC = "aleatoric"
BNN_EPISTEMIC = "epistemic"
BNN_KINDS = (BNN_PREDICTIVE, BNN_ALEATORIC, BNN_EPISTEMIC)


@dataclass(frozen=True)
class PhiConfig:
    method: str = PHI_MEAN
    bnn_kind: str = BNN_PREDICTIVE  # ignored when method == "mean"

    def __post_init__(self):
        if self.method not in PHI_METHODS:
            raise ConfigError("phi", f"must be one of {PHI_METHODS}, got {self.method!r}")
        if self.bnn_kind not in BNN_KINDS:
            raise ConfigError("bnn_kind", f"must be one of {BNN_KINDS}, got {self.bnn_kind!r}")


def _values(matrix) -> np.ndarray:
    values = matrix.values if isinstance(matrix, QualityMatrix) else np.asarray(matrix, float)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.size == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {values.shape}")
    return values


def _unit_range(values: np.ndarray) -> np.ndarray:
    if values.min() < 0.0 or values.max() > 1.0:
        raise ValueError("normalized matrix entries must lie in [0, 1]")
    return values


def phi_mean(matrix) -> float:
    """Arithmetic mean of all entries of the raw matrix."""
    return float(_values(matrix).mean())


def minmax_normalize(matrix) -> np.ndarray:
    """Whole-matrix min-max scaling into [0, 1]; a constant matrix maps to
    zeros (full cross-candidate agreement must read as zero uncertainty)."""
    values = _values(matrix)
    lo = values.min()
    hi = values.max()
    if hi == lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


def binary_entropy(p: np.ndarray) -> np.ndarray:
    """Elementwise entropy of [p, 1-p] in nats, with 0·ln 0 = 0."""
    p = np.asarray(p, dtype=np.float64)
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        inner = q > 0.0
        out[inner] -= q[inner] * np.log(q[inner])
    return out


def bnn_predictive(normalized) -> float:
    """Sum over columns of the entropy of the column mean."""
    values = _unit_range(_values(normalized))
    return float(binary_entropy(values.mean(axis=0)).sum())


def bnn_aleatoric(normalized) -> float:
    """Sum over columns of the mean per-candidate entropy."""
    values = _unit_range(_values(normalized))
    return float(binary_entropy(values).mean(axis=0).sum())


def bnn_epistemic(normalized) -> float:
    """Predictive minus aleatoric; nonnegative by concavity of entropy."""
    return max(0.0, bnn_predictive(normalized) - bnn_aleatoric(normalized))


_BNN = {
    BNN_PREDICTIVE: bnn_predictive,
    BNN_ALEATORIC: bnn_aleatoric,
    BNN_EPISTEMIC: bnn_epistemic,
}


def phi_bnn(matrix, kind: str = BNN_PREDICTIVE) -> float:
    return _BNN[kind](minmax_normalize(matrix))


def phi_m_bnn(matrix, kind: str = BNN_PREDICTIVE) -> float:
    """Mean of the normalized matrix times its binary uncertainty."""
    normalized = minmax_normalize(matrix)
    return float(normalized.mean()) * _BNN[kind](normalized)


def apply_phi(matrix, config: PhiConfig) -> float:
    if config.method == PHI_MEAN:
        return phi_mean(matrix)
    if config.method == PHI_BNN:
        return phi_bnn(matrix, config.bnn_kind)
    return phi_m_bnn(matrix, config.bnn_kind)
