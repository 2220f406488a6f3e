"""Model-capability providers: text embedding, token tagging, NLI judgment.

Two families share one addressing contract:

* synthetic providers — deterministic, model-free stand-ins for tests and
  the bundled toy pipeline;
* file-backed providers — read JSONL exports produced by an external
  adapter, keyed by (dialogue id, role/scope, index).

Export formats (one JSON object per line):
  embeddings: {"id", "role": "dialogue_noun"|"summary_noun"|"candidate_text",
               "index": [int, ...], "vector": [float, ...]}
  tags:       {"id", "scope": "dialogue"|"candidate", "cand_idx"?,
               "tokens": [{"surface", "tag", "position"}, ...]}
  nli:        {"id", "cand_idx", "premise_idx", "hypothesis_idx",
               "positive", "negative"}

Tag positions index the token stream produced by `text.tokenize` applied
turn by turn (dialogue scope) or to the candidate text (candidate scope).
"""

import hashlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Dialogue, iter_jsonl
from .errors import CorpusSchemaError, CorpusValidationError, ExportLookupError
from .text import tokenize

NOUN = "NOUN"
PROPER_NOUN = "PROPER_NOUN"
OTHER = "OTHER"
TAGS = (NOUN, PROPER_NOUN, OTHER)

EMBEDDING_ROLES = ("dialogue_noun", "summary_noun", "candidate_text")

# Closed noun vocabulary for the synthetic tagger. Deliberately small: the
# toy corpus and the tests draw from it, everything else tags as OTHER.
SYNTHETIC_NOUN_LEXICON = frozenset(
    """
    afternoon agenda airport apartment bag bike birthday book breakfast bus
    cake car cat coffee concert deadline dinner doctor dog email evening
    exam film flat flowers friday game garden gift guitar gym holiday
    homework hotel house invoice keys kitchen laptop lunch meeting money
    monday morning movie museum night office paper park party phone photo
    picnic pizza plan present project rain recipe report restaurant room
    salad saturday school shop shower station sunday table tea team test
    ticket tickets train trip tuesday weather wedding week weekend work
    """.split()
)


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tag: str
    position: int


@dataclass(frozen=True)
class NliJudgment:
    """Two probabilities; downstream uses negative - positive (smaller = better)."""

    positive: float
    negative: float

    def __post_init__(self):
        for name, value in (("positive", self.positive), ("negative", self.negative)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")

    @property
    def score(self) -> float:
        return self.negative - self.positive


def _require_text(text: str) -> str:
    if not isinstance(text, str) or not text.strip():
        raise ValueError("text must be a non-empty string")
    return text


class SyntheticEmbedder:
    """Hash-expanded unit vectors: deterministic, collision-sparse, model-free."""

    def __init__(self, dim: int = 16, seed: int = 0):
        if dim < 1:
            raise ValueError("dim must be >= 1")
        self.dim = dim
        self.seed = seed

    def embed_text(self, text: str) -> np.ndarray:
        _require_text(text)
        payload = self.seed.to_bytes(8, "little", signed=True) + text.lower().encode("utf-8")
        digest = hashlib.shake_256(payload).digest(8 * self.dim)
        words = np.frombuffer(digest, dtype="<u8").astype(np.float64)
        vec = words / 2.0**63 - 1.0
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            vec = np.zeros(self.dim)
            vec[0] = 1.0
            return vec
        return vec / norm


class SyntheticTagger:
    """Rule tagger: capitalized -> PROPER_NOUN, lexicon -> NOUN, else OTHER."""

    def __init__(self, lexicon: frozenset[str] = SYNTHETIC_NOUN_LEXICON):
        self.lexicon = lexicon

    def tag_tokens(self, text: str) -> list[TaggedToken]:
        _require_text(text)
        out = []
        for pos, surface in enumerate(tokenize(text)):
            if surface[:1].isupper():
                tag = PROPER_NOUN
            elif surface.lower() in self.lexicon:
                tag = NOUN
            else:
                tag = OTHER
            out.append(TaggedToken(surface=surface, tag=tag, position=pos))
        return out


class SyntheticNli:
    """Token-overlap judge: positive = Dice overlap of lowercased token sets."""

    def nli_score(self, premise: str, hypothesis: str) -> NliJudgment:
        _require_text(premise)
        _require_text(hypothesis)
        p = set(tokenize(premise.lower()))
        h = set(tokenize(hypothesis.lower()))
        if not p and not h:
            positive = 1.0
        elif not p or not h:
            positive = 0.0
        else:
            positive = 2.0 * len(p & h) / (len(p) + len(h))
        return NliJudgment(positive=positive, negative=1.0 - positive)


def _format_key(dialogue_id: str, role: str, index: tuple[int, ...]) -> str:
    return "/".join([dialogue_id, role, *map(str, index)])


class FileEmbeddingStore:
    """In-memory lookup over an embedding export, keyed by (id, role, index)."""

    def __init__(self, path):
        self.path = Path(path)
        self.dim: int | None = None
        self._vectors: dict[tuple[str, str, tuple[int, ...]], np.ndarray] = {}
        for line_no, rec in iter_jsonl(self.path):
            try:
                did = rec["id"]
                role = rec["role"]
                index = tuple(int(i) for i in rec["index"])
                vec = np.asarray(rec["vector"], dtype=np.float64)
            except (KeyError, TypeError, ValueError) as exc:
                raise CorpusSchemaError(self.path, line_no, f"bad embedding record: {exc}") from exc
            if role not in EMBEDDING_ROLES:
                raise CorpusSchemaError(self.path, line_no, f"unknown role {role!r}")
            if vec.ndim != 1 or vec.size == 0 or not np.all(np.isfinite(vec)):
                raise CorpusSchemaError(self.path, line_no, "vector must be 1-D, non-empty, finite")
            if self.dim is None:
                self.dim = int(vec.size)
            elif vec.size != self.dim:
                raise CorpusSchemaError(
                    self.path, line_no, f"vector dim {vec.size} != {self.dim} seen earlier"
                )
            key = (did, role, index)
            if key in self._vectors:
                raise CorpusValidationError(
                    f"{self.path}:{line_no}: duplicate embedding key {_format_key(*key)}"
                )
            self._vectors[key] = vec

    def lookup(self, dialogue_id: str, role: str, index: tuple[int, ...]) -> np.ndarray:
        try:
            return self._vectors[(dialogue_id, role, index)]
        except KeyError:
            raise ExportLookupError(
                "embedding", _format_key(dialogue_id, role, index)
            ) from None

    def keys(self) -> set:
        return set(self._vectors)

    def __len__(self):
        return len(self._vectors)


def _parse_tokens(raw, path, line_no) -> tuple[TaggedToken, ...]:
    tokens = []
    last_pos = -1
    for item in raw:
        try:
            tok = TaggedToken(
                surface=item["surface"], tag=item["tag"], position=int(item["position"])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorpusSchemaError(path, line_no, f"bad token record: {exc}") from exc
        if tok.tag not in TAGS:
            raise CorpusSchemaError(path, line_no, f"unknown tag {tok.tag!r}")
        if tok.position <= last_pos:
            raise CorpusSchemaError(path, line_no, "token positions must be strictly increasing")
        last_pos = tok.position
        tokens.append(tok)
    return tuple(tokens)


class FileTagStore:
    """Tag records per dialogue and per candidate."""

    def __init__(self, path):
        self.path = Path(path)
        self._dialogue: dict[str, tuple[TaggedToken, ...]] = {}
        self._candidate: dict[tuple[str, int], tuple[TaggedToken, ...]] = {}
        for line_no, rec in iter_jsonl(self.path):
            scope = rec.get("scope")
            did = rec.get("id")
            if not isinstance(did, str) or scope not in ("dialogue", "candidate"):
                raise CorpusSchemaError(self.path, line_no, "tag record needs id and valid scope")
            tokens = _parse_tokens(rec.get("tokens", []), self.path, line_no)
            if scope == "dialogue":
                if did in self._dialogue:
                    raise CorpusValidationError(
                        f"{self.path}:{line_no}: duplicate dialogue tag record for {did!r}"
                    )
                self._dialogue[did] = tokens
            else:
                try:
                    cand_idx = int(rec["cand_idx"])
                except (KeyError, TypeError, ValueError) as exc:
                    raise CorpusSchemaError(
                        self.path, line_no, "candidate tag record needs cand_idx"
                    ) from exc
                key = (did, cand_idx)
                if key in self._candidate:
                    raise CorpusValidationError(
                        f"{self.path}:{line_no}: duplicate candidate tag record {did}/{cand_idx}"
                    )
                self._candidate[key] = tokens

    def dialogue_tokens(self, dialogue_id: str) -> tuple[TaggedToken, ...]:
        try:
            return self._dialogue[dialogue_id]
        except KeyError:
            raise ExportLookupError("tag", f"{dialogue_id}/dialogue") from None

    def candidate_tokens(self, dialogue_id: str, cand_idx: int) -> tuple[TaggedToken, ...]:
        try:
            return self._candidate[(dialogue_id, cand_idx)]
        except KeyError:
            raise ExportLookupError("tag", f"{dialogue_id}/candidate/{cand_idx}") from None


class FileNliStore:
    def __init__(self, path):
        self.path = Path(path)
        self._judgments: dict[tuple[str, int, int, int], NliJudgment] = {}
        for line_no, rec in iter_jsonl(self.path):
            try:
                key = (
                    rec["id"],
                    int(rec["cand_idx"]),
                    int(rec["premise_idx"]),
                    int(rec["hypothesis_idx"]),
                )
                judgment = NliJudgment(
                    positive=float(rec["positive"]), negative=float(rec["negative"])
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise CorpusSchemaError(self.path, line_no, f"bad NLI record: {exc}") from exc
            if key in self._judgments:
                raise CorpusValidationError(
                    f"{self.path}:{line_no}: duplicate NLI key {'/'.join(map(str, key))}"
                )
            self._judgments[key] = judgment

    def lookup(self, dialogue_id, cand_idx, premise_idx, hypothesis_idx) -> NliJudgment:
        key = (dialogue_id, cand_idx, premise_idx, hypothesis_idx)
        try:
            return self._judgments[key]
        except KeyError:
            raise ExportLookupError("nli", "/".join(map(str, key))) from None

    def keys(self) -> set:
        return set(self._judgments)

    def __len__(self):
        return len(self._judgments)


def split_dialogue_tokens(dialogue: Dialogue, tokens) -> list[list[TaggedToken]]:
    """Slice a flat dialogue token list into per-turn lists.

    The export contract pins token positions to `text.tokenize` applied
    turn by turn, so turn boundaries fall at the cumulative token counts.
    """
    counts = [len(tokenize(turn)) for turn in dialogue.turns]
    if sum(counts) != len(tokens):
        raise CorpusValidationError(
            f"dialogue {dialogue.id!r}: tag export has {len(tokens)} tokens, "
            f"tokenizer yields {sum(counts)}"
        )
    out = []
    start = 0
    for count in counts:
        out.append(list(tokens[start : start + count]))
        start += count
    return out


class SyntheticProviderSet:
    """Addressed provider facade backed by the synthetic implementations."""

    name = "synthetic"

    def __init__(self, dim: int = 16, seed: int = 0):
        self.embedder = SyntheticEmbedder(dim=dim, seed=seed)
        self.tagger = SyntheticTagger()
        self.nli_model = SyntheticNli()

    @property
    def dim(self) -> int:
        return self.embedder.dim

    def candidate_embedding(self, dialogue_id, cand_idx, text) -> np.ndarray:
        return self.embedder.embed_text(text)

    def dialogue_noun_embedding(self, dialogue_id, type_idx, surface) -> np.ndarray:
        return self.embedder.embed_text(surface)

    def candidate_noun_embedding(self, dialogue_id, cand_idx, occ_idx, surface) -> np.ndarray:
        return self.embedder.embed_text(surface)

    def dialogue_turn_tags(self, dialogue: Dialogue) -> list[list[TaggedToken]]:
        return [self.tagger.tag_tokens(turn) for turn in dialogue.turns]

    def candidate_tags(self, dialogue_id, cand_idx, text) -> list[TaggedToken]:
        return self.tagger.tag_tokens(text)

    def nli(self, dialogue_id, cand_idx, premise_idx, hypothesis_idx, premise, hypothesis):
        return self.nli_model.nli_score(premise, hypothesis)

    def metadata(self) -> dict:
        return {"provider": self.name, "dim": self.dim, "seed": self.embedder.seed}


class FileProviderSet:
    """Addressed provider facade over adapter export files."""

    name = "files"

    def __init__(self, embeddings_path, tags_path, nli_path):
        self.embeddings = FileEmbeddingStore(embeddings_path)
        self.tags = FileTagStore(tags_path)
        self.nli_store = FileNliStore(nli_path)

    @property
    def dim(self) -> int | None:
        return self.embeddings.dim

    def candidate_embedding(self, dialogue_id, cand_idx, text) -> np.ndarray:
        return self.embeddings.lookup(dialogue_id, "candidate_text", (cand_idx,))

    def dialogue_noun_embedding(self, dialogue_id, type_idx, surface) -> np.ndarray:
        return self.embeddings.lookup(dialogue_id, "dialogue_noun", (type_idx,))

    def candidate_noun_embedding(self, dialogue_id, cand_idx, occ_idx, surface) -> np.ndarray:
        return self.embeddings.lookup(dialogue_id, "summary_noun", (cand_idx, occ_idx))

    def dialogue_turn_tags(self, dialogue: Dialogue) -> list[list[TaggedToken]]:
        return split_dialogue_tokens(dialogue, self.tags.dialogue_tokens(dialogue.id))

    def candidate_tags(self, dialogue_id, cand_idx, text) -> list[TaggedToken]:
        return list(self.tags.candidate_tokens(dialogue_id, cand_idx))

    def nli(self, dialogue_id, cand_idx, premise_idx, hypothesis_idx, premise, hypothesis):
        return self.nli_store.lookup(dialogue_id, cand_idx, premise_idx, hypothesis_idx)

    def metadata(self) -> dict:
        return {
            "provider": self.name,
            "dim": self.dim,
            "embeddings_file": str(self.embeddings.path),
            "tags_file": str(self.tags.path),
            "nli_file": str(self.nli_store.path),
        }
