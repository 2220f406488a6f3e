"""Deterministic text segmentation rules.

These rules are part of the engine's wire contract: exporters that address
tokens or sentences by index (tag positions, NLI hypothesis indices) must
segment text exactly the same way.
"""

import re

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)
_SENTENCE_RE = re.compile(r"(?<=[.!?])\s+")


def tokenize(text: str) -> list[str]:
    """Split on any non-alphanumeric run, preserving case."""
    return _TOKEN_RE.findall(text)


def metric_tokens(text: str) -> list[str]:
    """Tokens for the summarization metrics: lowercased."""
    return _TOKEN_RE.findall(text.lower())


def split_sentences(text: str) -> list[str]:
    """Split on '.', '!' or '?' followed by whitespace.

    Text without terminal punctuation is a single sentence. Empty segments
    are dropped.
    """
    parts = _SENTENCE_RE.split(text)
    return [p.strip() for p in parts if p.strip()]
