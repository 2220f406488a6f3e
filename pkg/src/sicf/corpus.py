"""Line-delimited corpus loading, validation, and splitting.

File formats (UTF-8 JSON lines, order significant):
  dialogues:  {"id": str, "dialogue": [turn, ...], "summary": str?}
  candidates: {"id": str, "candidates": [text, ...]}
"""

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorpusSchemaError, CorpusValidationError, EmptyCorpusError

SPLIT_KINDS = ("labeled", "unlabeled", "auto")


@dataclass(frozen=True)
class Dialogue:
    """One dialogue; turns are the source file's newline-delimited utterances."""

    id: str
    turns: tuple[str, ...]

    @property
    def raw_text(self) -> str:
        return "\n".join(self.turns)


@dataclass(frozen=True)
class SummarySet:
    """A dialogue's candidate summaries, in stable generation order."""

    dialogue_id: str
    candidates: tuple[str, ...]
    reference: str | None = None


@dataclass
class CorpusSplit:
    """Labeled (dialogue, reference) pairs plus unlabeled dialogues."""

    labeled: list[tuple[Dialogue, str]] = field(default_factory=list)
    unlabeled: list[Dialogue] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        seen = set()
        for d in self.dialogues():
            if d.id in seen:
                raise CorpusValidationError(
                    f"duplicate dialogue id {d.id!r} across split '{self.name}'"
                )
            seen.add(d.id)

    def dialogues(self) -> list[Dialogue]:
        return [d for d, _ in self.labeled] + list(self.unlabeled)

    def references(self) -> dict[str, str]:
        return {d.id: ref for d, ref in self.labeled}

    def __len__(self) -> int:
        return len(self.labeled) + len(self.unlabeled)


def iter_jsonl(path):
    """Yield (line_no, record) for every non-blank line; 1-based line numbers."""
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusSchemaError(path, line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(record, dict):
                raise CorpusSchemaError(path, line_no, "record is not a JSON object")
            yield line_no, record


def _require(record, key, path, line_no, kind):
    if key not in record:
        raise CorpusSchemaError(path, line_no, f"missing required field '{key}'")
    value = record[key]
    if not isinstance(value, kind):
        raise CorpusSchemaError(path, line_no, f"field '{key}' has wrong type")
    return value


def _parse_dialogue(record, path, line_no) -> tuple[Dialogue, str | None]:
    did = _require(record, "id", path, line_no, str)
    if not did:
        raise CorpusSchemaError(path, line_no, "field 'id' is empty")
    turns = _require(record, "dialogue", path, line_no, list)
    if not turns or not all(isinstance(t, str) and t.strip() for t in turns):
        raise CorpusSchemaError(
            path, line_no, "field 'dialogue' must be a non-empty list of non-blank turns"
        )
    summary = record.get("summary")
    if summary is not None and not isinstance(summary, str):
        raise CorpusSchemaError(path, line_no, "field 'summary' has wrong type")
    return Dialogue(id=did, turns=tuple(turns)), summary


def load_corpus(path, kind: str = "auto", name: str | None = None) -> CorpusSplit:
    """Load a dialogue file into a CorpusSplit, preserving record order.

    kind='labeled' requires a summary on every record; kind='unlabeled'
    ignores summaries; kind='auto' routes each record by summary presence.
    """
    if kind not in SPLIT_KINDS:
        raise ValueError(f"kind must be one of {SPLIT_KINDS}, got {kind!r}")
    path = Path(path)
    labeled: list[tuple[Dialogue, str]] = []
    unlabeled: list[Dialogue] = []
    seen: set[str] = set()
    for line_no, record in iter_jsonl(path):
        dialogue, summary = _parse_dialogue(record, path, line_no)
        if dialogue.id in seen:
            raise CorpusValidationError(
                f"{path}:{line_no}: duplicate dialogue id {dialogue.id!r}"
            )
        seen.add(dialogue.id)
        if kind == "labeled":
            if summary is None:
                raise CorpusSchemaError(path, line_no, "missing required field 'summary'")
            labeled.append((dialogue, summary))
        elif kind == "unlabeled":
            unlabeled.append(dialogue)
        else:
            if summary is None:
                unlabeled.append(dialogue)
            else:
                labeled.append((dialogue, summary))
    if not seen:
        raise EmptyCorpusError(f"{path}: no records")
    return CorpusSplit(labeled=labeled, unlabeled=unlabeled, name=name or path.stem)


def load_candidates(path) -> dict[str, SummarySet]:
    """Load candidate summary sets keyed by dialogue id."""
    path = Path(path)
    sets: dict[str, SummarySet] = {}
    for line_no, record in iter_jsonl(path):
        did = _require(record, "id", path, line_no, str)
        cands = _require(record, "candidates", path, line_no, list)
        if not cands or not all(isinstance(c, str) and c.strip() for c in cands):
            raise CorpusSchemaError(
                path, line_no, "field 'candidates' must be a non-empty list of non-blank strings"
            )
        if did in sets:
            raise CorpusValidationError(f"{path}:{line_no}: duplicate dialogue id {did!r}")
        sets[did] = SummarySet(dialogue_id=did, candidates=tuple(cands))
    if not sets:
        raise EmptyCorpusError(f"{path}: no records")
    return sets


def write_corpus(split: CorpusSplit, path) -> None:
    """Write a split back to the dialogue JSONL format (round-trip safe)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for dialogue, reference in split.labeled:
            rec = {"id": dialogue.id, "dialogue": list(dialogue.turns), "summary": reference}
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
        for dialogue in split.unlabeled:
            rec = {"id": dialogue.id, "dialogue": list(dialogue.turns)}
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")


def write_candidates(sets: dict[str, SummarySet], path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for did in sorted(sets):
            rec = {"id": did, "candidates": list(sets[did].candidates)}
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")


def split_corpus(
    full: CorpusSplit,
    labeled_ratio: float,
    unlabeled_ratio: float,
    seed: int,
    name: str = "",
) -> CorpusSplit:
    """Draw disjoint labeled/unlabeled subsets of floor(N*ratio) dialogues.

    Sampling is uniform over the labeled pool of `full` and deterministic
    for a fixed seed. Unlabeled picks drop their references.
    """
    for label, ratio in (("labeled_ratio", labeled_ratio), ("unlabeled_ratio", unlabeled_ratio)):
        if not 0.0 <= ratio <= 1.0:
            raise ValueError(f"{label} must be in [0, 1], got {ratio}")
    if labeled_ratio + unlabeled_ratio > 1.0 + 1e-12:
        raise ValueError("labeled_ratio + unlabeled_ratio must not exceed 1")
    if labeled_ratio + unlabeled_ratio <= 0.0:
        raise ValueError("at least one ratio must be positive")
    pool = list(full.labeled)
    if not pool:
        raise CorpusValidationError("split_corpus needs a labeled pool to draw from")
    n = len(pool)
    n_lab = int(n * labeled_ratio)
    n_unl = int(n * unlabeled_ratio)
    order = list(range(n))
    random.Random(seed).shuffle(order)
    labeled = [pool[i] for i in sorted(order[:n_lab])]
    unlabeled = [pool[i][0] for i in sorted(order[n_lab : n_lab + n_unl])]
    return CorpusSplit(labeled=labeled, unlabeled=unlabeled, name=name or f"{full.name}-split")
