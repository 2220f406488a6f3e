"""Summarization metrics and the two score-quality evaluations.

Metrics (per sample, in [0, 1]): ROUGE-1/2 (clipped n-gram F1), ROUGE-L
(LCS F1), and an embedding F score (greedy max-cosine matching, no idf).
Corpus value = unweighted mean over samples.

Evaluations: the force-truth elimination curve (replace the worst-first
fraction of predictions by their references and re-score) and the
improved ratio (gain over an initial baseline, normalized by the gain of
a pseudo-oracle).
"""

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import ConfigError
from .providers import SyntheticEmbedder
from .text import metric_tokens

ROUGE1 = "rouge1"
ROUGE2 = "rouge2"
ROUGEL = "rougel"
EMB_F = "emb_f"
METRICS = (ROUGE1, ROUGE2, ROUGEL, EMB_F)

ELIM_RATIOS = tuple(r / 10 for r in range(10))


@dataclass(frozen=True)
class EvalSample:
    sample_id: str
    prediction: str
    reference: str


@dataclass(frozen=True)
class ElimCurve:
    metric: str
    ratios: tuple[float, ...]
    values: tuple[float, ...]
    mean_0_50: float
    mean_0_90: float


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _ngrams(tokens, n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate, reference, n: int) -> float:
    """Clipped n-gram overlap F1. Both sides empty → 1.0 (vacuous identity)."""
    if n not in (1, 2):
        raise ValueError(f"n must be 1 or 2, got {n}")
    cand = _ngrams(candidate, n)
    ref = _ngrams(reference, n)
    total_cand = sum(cand.values())
    total_ref = sum(ref.values())
    if total_cand == 0 and total_ref == 0:
        return 1.0
    if total_cand == 0 or total_ref == 0:
        return 0.0
    overlap = sum((cand & ref).values())
    return _f1(overlap / total_cand, overlap / total_ref)


def rouge_l(candidate, reference) -> float:
    """LCS-based F1: P = LCS/|candidate|, R = LCS/|reference|."""
    if len(candidate) == 0 and len(reference) == 0:
        return 1.0
    if len(candidate) == 0 or len(reference) == 0:
        return 0.0
    vocab: dict[str, int] = {}
    x = np.array([vocab.setdefault(t, len(vocab)) for t in candidate], dtype=np.int64)
    y = np.array([vocab.setdefault(t, len(vocab)) for t in reference], dtype=np.int64)
    lcs = backend.lcs_length(x, y)
    return _f1(lcs / len(candidate), lcs / len(reference))


def emb_f(candidate, reference, embed_fn) -> float:
    """Greedy max-cosine matching F. Final value clamped into [0, 1] (raw
    cosines can go negative; the score contract is a unit interval)."""
    if len(candidate) == 0 or len(reference) == 0:
        raise ValueError("emb_f requires non-empty token lists on both sides")
    cand = np.stack([np.asarray(embed_fn(t), dtype=np.float64) for t in candidate])
    ref = np.stack([np.asarray(embed_fn(t), dtype=np.float64) for t in reference])
    cand = cand / np.maximum(np.linalg.norm(cand, axis=1, keepdims=True), 1e-12)
    ref = ref / np.maximum(np.linalg.norm(ref, axis=1, keepdims=True), 1e-12)
    sim = cand @ ref.T  # (|cand|, |ref|)
    precision = float(sim.max(axis=1).mean())
    recall = float(sim.max(axis=0).mean())
    if precision + recall == 0.0:
        return 0.0
    f = 2.0 * precision * recall / (precision + recall)
    return min(1.0, max(0.0, f))


def _default_embedder():
    return SyntheticEmbedder(dim=16, seed=0).embed_text


def score_pair(metric: str, prediction: str, reference: str, embed_fn=None) -> float:
    """Tokenize both texts with the metric tokenizer and score one pair."""
    cand = metric_tokens(prediction)
    ref = metric_tokens(reference)
    if metric == ROUGE1:
        return rouge_n(cand, ref, 1)
    if metric == ROUGE2:
        return rouge_n(cand, ref, 2)
    if metric == ROUGEL:
        return rouge_l(cand, ref)
    if metric == EMB_F:
        if not cand and not ref:
            return 1.0
        if not cand or not ref:
            return 0.0
        return emb_f(cand, ref, embed_fn or _default_embedder())
    raise ConfigError("metric", f"must be one of {METRICS}, got {metric!r}")


def corpus_metric(samples, metric: str, embed_fn=None) -> float:
    """Unweighted mean of per-sample scores."""
    samples = list(samples)
    if not samples:
        raise ValueError("need at least one sample")
    return float(
        np.mean([score_pair(metric, s.prediction, s.reference, embed_fn) for s in samples])
    )


def elimination_curve(samples, quality_order, metric: str, embed_fn=None) -> ElimCurve:
    """Replace the first floor(N·r) predictions in worst-first order by their
    references and re-score, for r in 0.0..0.9."""
    samples = list(samples)
    by_id = {s.sample_id: s for s in samples}
    if len(by_id) != len(samples):
        raise ValueError("duplicate sample ids")
    if sorted(quality_order) != sorted(by_id):
        raise ValueError("quality_order must be a permutation of the sample ids")
    n = len(samples)
    values = []
    for ratio in ELIM_RATIOS:
        replaced = set(quality_order[: math.floor(n * ratio)])
        adjusted = [
            EvalSample(s.sample_id, s.reference, s.reference)
            if s.sample_id in replaced
            else s
            for s in samples
        ]
        values.append(corpus_metric(adjusted, metric, embed_fn))
    return ElimCurve(
        metric=metric,
        ratios=ELIM_RATIOS,
        values=tuple(values),
        mean_0_50=float(np.mean(values[:6])),
        mean_0_90=float(np.mean(values)),
    )


def improved_ratio(ms_m: float, ms_ini: float, ms_ora: float) -> float:
    """(ms_m − ms_ini) / (ms_ora − ms_ini); may exceed 1 or be negative."""
    if ms_ora == ms_ini:
        raise ValueError("improved ratio undefined when ms_ora equals ms_ini")
    return (ms_m - ms_ini) / (ms_ora - ms_ini)
