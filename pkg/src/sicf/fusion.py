"""Rank-based fusion of the three quality signals and top-fraction selection.

Raw scalars are "smaller = better". Each signal column is converted to a
rank number δ in 1..N (descending sort, so the best sample gets δ = N),
then fused as (α·δ_sein + β·δ_cov + γ_f·δ_fai) / 3N. Larger fused value =
higher quality. The 3N divisor is a uniform positive scale kept for report
fidelity; it cannot change the selection order.
"""

import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .uncertainty import PhiConfig


@dataclass(frozen=True)
class ScoreBundle:
    """Per-dialogue raw quality scalars plus scoring provenance."""

    dialogue_id: str
    lambda_sein: float
    lambda_cov: float
    lambda_fai: float
    phi_used: PhiConfig = field(default_factory=PhiConfig)
    flags: frozenset = frozenset()
    representative_idx: int = 0
    k: int = 1

    def __post_init__(self):
        for name in ("lambda_sein", "lambda_cov", "lambda_fai"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class RankRow:
    dialogue_id: str
    delta_sein: int
    delta_cov: int
    delta_fai: int
    lambda_sicf: float
    flags: frozenset = frozenset()
    representative_idx: int = 0


@dataclass(frozen=True)
class RankTable:
    rows: tuple[RankRow, ...]
    alpha: float
    beta: float
    gamma_f: float

    @property
    def n(self) -> int:
        return len(self.rows)


def rank_scores(values, ids) -> list[int]:
    """Rank numbers δ in 1..N: position in the descending sort of values,
    ties broken by ascending id. The smallest value receives δ = N."""
    if len(values) != len(ids):
        raise ValueError("values and ids must have equal length")
    if len(values) == 0:
        raise ValueError("need at least one value")
    for value in values:
        if not math.isfinite(value):
            raise ValueError(f"values must be finite, got {value}")
    order = sorted(range(len(values)), key=lambda i: (-values[i], ids[i]))
    delta = [0] * len(values)
    for position, i in enumerate(order, start=1):
        delta[i] = position
    return delta


def fuse_sicf(bundles, alpha: float = 1.0, beta: float = 1.0, gamma_f: float = 1.0) -> RankTable:
    """Fuse per-dialogue scores into a rank table (larger fused value = better)."""
    for name, coeff in (("alpha", alpha), ("beta", beta), ("gamma", gamma_f)):
        if not math.isfinite(coeff) or coeff < 0:
            raise ConfigError(name, f"must be a nonnegative real, got {coeff}")
    if alpha == 0 and beta == 0 and gamma_f == 0:
        raise ConfigError("alpha/beta/gamma", "coefficients must not all be zero")
    bundles = list(bundles)
    if not bundles:
        raise ValueError("need at least one score bundle")
    ids = [b.dialogue_id for b in bundles]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate dialogue ids in score bundles")
    n = len(bundles)
    d_sein = rank_scores([b.lambda_sein for b in bundles], ids)
    d_cov = rank_scores([b.lambda_cov for b in bundles], ids)
    d_fai = rank_scores([b.lambda_fai for b in bundles], ids)
    rows = tuple(
        RankRow(
            dialogue_id=b.dialogue_id,
            delta_sein=d_sein[i],
            delta_cov=d_cov[i],
            delta_fai=d_fai[i],
            lambda_sicf=(alpha * d_sein[i] + beta * d_cov[i] + gamma_f * d_fai[i]) / (3 * n),
            flags=b.flags,
            representative_idx=b.representative_idx,
        )
        for i, b in enumerate(bundles)
    )
    return RankTable(rows=rows, alpha=alpha, beta=beta, gamma_f=gamma_f)


def select_top(table: RankTable, ratio: float) -> list[RankRow]:
    """The floor(N·ratio) rows with largest fused value, sorted descending
    (ties broken by ascending id)."""
    if not 0.0 <= ratio <= 1.0:
        raise ConfigError("ratio", f"must be in [0, 1], got {ratio}")
    count = math.floor(table.n * ratio)
    ranked = sorted(table.rows, key=lambda r: (-r.lambda_sicf, r.dialogue_id))
    return ranked[:count]
