"""Per-dialogue quality signals over a candidate-summary set.

Three signals, all "smaller = better":

* semantic invariance — variance of the k candidate text embeddings;
* coverage — how close each dialogue noun type sits to some candidate noun
  (k×p weighted min-distance matrix);
* faithfulness — NLI disagreement between dialogue sentences and candidate
  sentences (k×h weighted min matrix with a penalty activation).

Matrix construction lives here; collapsing a matrix to a scalar is the
`uncertainty` module's job.
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import DegenerateCoverageError
from .providers import NOUN, PROPER_NOUN, TaggedToken

COVERAGE = "COVERAGE"
FAITHFULNESS = "FAITHFULNESS"

COVERAGE_PENALTY_DEFAULT = 2.0


@dataclass(frozen=True)
class NounType:
    """A dialogue noun deduplicated by lowercased surface."""

    surface: str
    is_proper: bool
    count: int

    @property
    def weight(self) -> float:
        return 1.0 if self.is_proper else float(self.count)


@dataclass(frozen=True)
class SentenceInfo:
    """A dialogue sentence and its capped noun weight."""

    text: str
    noun_weight: float


@dataclass
class CoverageInputs:
    dialogue_nouns: list  # list of (NounType, vector)
    candidate_nouns: list  # per candidate: list of vectors (may be empty)


@dataclass
class FaithfulnessInputs:
    dialogue_sentences: list[SentenceInfo]
    candidate_sentences: list[list[str]]  # per candidate: sentence texts (may be empty)


@dataclass
class QualityMatrix:
    values: np.ndarray  # (k, L)
    kind: str
    penalty: float = 0.0
    penalty_cells: int = 0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise ValueError(f"matrix must be 2-D, got shape {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("matrix contains non-finite values")

    @property
    def k(self) -> int:
        return int(self.values.shape[0])

    @property
    def cols(self) -> int:
        return int(self.values.shape[1])


def semantic_invariance(embeddings) -> float:
    """Mean over dimensions of the population variance across k embeddings."""
    mat = _embedding_matrix(embeddings)
    return float(mat.var(axis=0, ddof=0).mean())


def representative_summary(embeddings) -> int:
    """Index of the candidate closest to the mean embedding (ties: lowest index)."""
    mat = _embedding_matrix(embeddings)
    dist = np.linalg.norm(mat - mat.mean(axis=0), axis=1)
    return int(np.argmin(dist))


def _embedding_matrix(embeddings) -> np.ndarray:
    vectors = [np.asarray(e, dtype=np.float64) for e in embeddings]
    if not vectors:
        raise ValueError("need at least one embedding")
    dim = vectors[0].shape
    for v in vectors[1:]:
        if v.shape != dim:
            raise ValueError(f"embedding dim mismatch: {v.shape} vs {dim}")
    return np.stack(vectors)


def coverage_matrix(inputs: CoverageInputs, penalty: float = COVERAGE_PENALTY_DEFAULT) -> QualityMatrix:
    """k×p weighted min-distance matrix; rows for noun-free candidates = penalty."""
    p = len(inputs.dialogue_nouns)
    if p == 0:
        raise DegenerateCoverageError("dialogue has no noun types")
    weights = np.array([nt.weight for nt, _ in inputs.dialogue_nouns], dtype=np.float64)
    dialogue_vecs = np.stack([np.asarray(v, dtype=np.float64) for _, v in inputs.dialogue_nouns])
    rows = []
    penalty_cells = 0
    for cand_vecs in inputs.candidate_nouns:
        if len(cand_vecs) == 0:
            rows.append(np.full(p, penalty, dtype=np.float64))
            penalty_cells += p
            continue
        cand = np.stack([np.asarray(v, dtype=np.float64) for v in cand_vecs])
        rows.append(backend.min_dist_rows(dialogue_vecs, cand) * weights)
    return QualityMatrix(
        values=np.stack(rows), kind=COVERAGE, penalty=penalty, penalty_cells=penalty_cells
    )


def faithfulness_penalty_default(dialogue_sentences) -> float:
    """Worst achievable weighted NLI value: max sentence weight × 1.0."""
    return max((s.noun_weight for s in dialogue_sentences), default=0.0) * 1.0


def faithfulness_matrix(
    inputs: FaithfulnessInputs, nli, penalty: float | None = None
) -> QualityMatrix:
    """k×h weighted NLI-difference matrix.

    `nli(cand_idx, premise_idx, hypothesis_idx, premise, hypothesis)` must
    return an object with a `score` (negative − positive). Per candidate:
    per-dialogue-sentence min over the candidate's sentences, then × the
    sentence noun weight. Activation: zero-weight sentences and
    sentence-free candidates take the penalty value instead.
    """
    h = len(inputs.dialogue_sentences)
    if h == 0:
        raise ValueError("need at least one dialogue sentence")
    if penalty is None:
        penalty = faithfulness_penalty_default(inputs.dialogue_sentences)
    weights = np.array([s.noun_weight for s in inputs.dialogue_sentences], dtype=np.float64)
    zero_weight = weights == 0.0
    rows = []
    penalty_cells = 0
    for cand_idx, sentences in enumerate(inputs.candidate_sentences):
        if len(sentences) == 0:
            rows.append(np.full(h, penalty, dtype=np.float64))
            penalty_cells += h
            continue
        row = np.empty(h, dtype=np.float64)
        for a, premise in enumerate(inputs.dialogue_sentences):
            best = min(
                nli(cand_idx, a, b, premise.text, hypothesis).score
                for b, hypothesis in enumerate(sentences)
            )
            row[a] = best * weights[a]
        row[zero_weight] = penalty
        penalty_cells += int(zero_weight.sum())
        rows.append(row)
    return QualityMatrix(
        values=np.stack(rows), kind=FAITHFULNESS, penalty=penalty, penalty_cells=penalty_cells
    )


def dialogue_noun_types(turn_tags: list[list[TaggedToken]]) -> list[NounType]:
    """Noun types over a dialogue: deduped by lowercased surface, first-occurrence
    order, counted across all occurrences; proper if any occurrence is proper."""
    order: list[str] = []
    first_surface: dict[str, str] = {}
    counts: dict[str, int] = {}
    proper: dict[str, bool] = {}
    for tokens in turn_tags:
        for tok in tokens:
            if tok.tag not in (NOUN, PROPER_NOUN):
                continue
            key = tok.surface.lower()
            if key not in counts:
                order.append(key)
                first_surface[key] = tok.surface
                counts[key] = 0
                proper[key] = False
            counts[key] += 1
            proper[key] = proper[key] or tok.tag == PROPER_NOUN
    return [
        NounType(surface=first_surface[key], is_proper=proper[key], count=counts[key])
        for key in order
    ]


def noun_occurrences(tokens: list[TaggedToken]) -> list[str]:
    """Noun occurrence surfaces in order (repeats kept)."""
    return [tok.surface for tok in tokens if tok.tag in (NOUN, PROPER_NOUN)]


def sentence_noun_weight(tokens: list[TaggedToken]) -> float:
    """Noun occurrences in one sentence; each proper-noun type counts at most once."""
    weight = 0.0
    proper_seen: set[str] = set()
    for tok in tokens:
        if tok.tag == NOUN:
            weight += 1.0
        elif tok.tag == PROPER_NOUN:
            key = tok.surface.lower()
            if key not in proper_seen:
                proper_seen.add(key)
                weight += 1.0
    return weight
