"""SiCF: scoring, selection, and evaluation for dialogue-summarization
pseudolabels (semantic invariance, coverage, faithfulness)."""

__version__ = "0.1.0"

from .corpus import CorpusSplit, Dialogue, SummarySet, load_candidates, load_corpus, split_corpus
from .errors import (
    ConfigError,
    CorpusSchemaError,
    CorpusValidationError,
    DegenerateCoverageError,
    EmptyCorpusError,
    ExportLookupError,
    InvariantViolation,
    SicfError,
)
from .evaluation import ElimCurve, EvalSample, elimination_curve, improved_ratio
from .fusion import RankTable, ScoreBundle, fuse_sicf, rank_scores, select_top
from .scoring import (
    CoverageInputs,
    FaithfulnessInputs,
    QualityMatrix,
    coverage_matrix,
    faithfulness_matrix,
    representative_summary,
    semantic_invariance,
)
from .uncertainty import PhiConfig, apply_phi

__all__ = [
    "__version__",
    "ConfigError",
    "CorpusSchemaError",
    "CorpusSplit",
    "CorpusValidationError",
    "CoverageInputs",
    "DegenerateCoverageError",
    "Dialogue",
    "ElimCurve",
    "EmptyCorpusError",
    "EvalSample",
    "ExportLookupError",
    "FaithfulnessInputs",
    "InvariantViolation",
    "PhiConfig",
    "QualityMatrix",
    "RankTable",
    "ScoreBundle",
    "SicfError",
    "SummarySet",
    "apply_phi",
    "coverage_matrix",
    "elimination_curve",
    "faithfulness_matrix",
    "fuse_sicf",
    "improved_ratio",
    "load_candidates",
    "load_corpus",
    "rank_scores",
    "representative_summary",
    "select_top",
    "semantic_invariance",
    "split_corpus",
]
