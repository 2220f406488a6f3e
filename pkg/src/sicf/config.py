"""Run configuration: a flat JSON document validated field by field.

`threads` is an execution knob only: results must be independent of it, so
it is excluded from the config hash recorded in manifests.
"""

import dataclasses
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .evaluation import METRICS
from .uncertainty import BNN_KINDS, PHI_METHODS, PhiConfig

PROVIDER_MODES = ("synthetic", "files")


@dataclass
class RunConfig:
    dialogues: str = ""
    candidates: str = ""
    provider: str = "synthetic"
    embeddings_file: str | None = None
    tags_file: str | None = None
    nli_file: str | None = None
    k: int = 1
    embedding_dim: int = 16
    phi: str = "mean"
    bnn_kind: str = "predictive"
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    ratio: float = 0.25
    metrics: tuple[str, ...] = METRICS
    out: str = "out"
    seed: int = 0
    threads: int = 1
    coverage_penalty: float = 2.0
    faithfulness_penalty: float | None = None  # None → per-dialogue worst value
    debug_matrices: bool = False

    def __post_init__(self):
        self.metrics = tuple(self.metrics)
        self.validate()

    def validate(self):
        if not self.dialogues:
            raise ConfigError("dialogues", "path to the dialogue corpus is required")
        if not self.candidates:
            raise ConfigError("candidates", "path to the candidate file is required")
        if self.provider not in PROVIDER_MODES:
            raise ConfigError("provider", f"must be one of {PROVIDER_MODES}, got {self.provider!r}")
        if self.provider == "files":
            for name in ("embeddings_file", "tags_file", "nli_file"):
                if not getattr(self, name):
                    raise ConfigError(name, "required when provider is 'files'")
        if not isinstance(self.k, int) or self.k < 1:
            raise ConfigError("k", f"must be an integer >= 1, got {self.k!r}")
        if not isinstance(self.embedding_dim, int) or self.embedding_dim < 1:
            raise ConfigError("embedding_dim", f"must be an integer >= 1, got {self.embedding_dim!r}")
        if self.phi not in PHI_METHODS:
            raise ConfigError("phi", f"must be one of {PHI_METHODS}, got {self.phi!r}")
        if self.bnn_kind not in BNN_KINDS:
            raise ConfigError("bnn_kind", f"must be one of {BNN_KINDS}, got {self.bnn_kind!r}")
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) or value < 0:
                raise ConfigError(name, f"must be a nonnegative number, got {value!r}")
        if not isinstance(self.ratio, (int, float)) or not 0.0 <= self.ratio <= 1.0:
            raise ConfigError("ratio", f"must be in [0, 1], got {self.ratio!r}")
        for metric in self.metrics:
            if metric not in METRICS:
                raise ConfigError("metrics", f"unknown metric {metric!r}, choose from {METRICS}")
        if not self.metrics:
            raise ConfigError("metrics", "need at least one metric")
        if not isinstance(self.seed, int):
            raise ConfigError("seed", f"must be an integer, got {self.seed!r}")
        if not isinstance(self.threads, int) or self.threads < 1:
            raise ConfigError("threads", f"must be an integer >= 1, got {self.threads!r}")
        if not isinstance(self.coverage_penalty, (int, float)) or self.coverage_penalty < 0:
            raise ConfigError("coverage_penalty", f"must be >= 0, got {self.coverage_penalty!r}")
        if self.faithfulness_penalty is not None and (
            not isinstance(self.faithfulness_penalty, (int, float)) or self.faithfulness_penalty < 0
        ):
            raise ConfigError(
                "faithfulness_penalty", f"must be >= 0 or null, got {self.faithfulness_penalty!r}"
            )

    @property
    def phi_config(self) -> PhiConfig:
        return PhiConfig(method=self.phi, bnn_kind=self.bnn_kind)

    def to_dict(self) -> dict:
        data = dataclasses.asdict(self)
        data["metrics"] = list(self.metrics)
        return data

    def config_hash(self) -> str:
        """Stable digest of every result-affecting field (threads excluded)."""
        data = self.to_dict()
        data.pop("threads")
        payload = json.dumps(data, sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def load_config(path, overrides: dict | None = None) -> RunConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("<file>", f"cannot parse {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("<file>", f"{path}: config must be a JSON object")
    known = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(unknown[0], "unknown config field")
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**raw)
    except TypeError as exc:
        raise ConfigError("<file>", f"{path}: {exc}") from exc
