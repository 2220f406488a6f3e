"""Bundled data: a 20-dialogue toy corpus with 4 candidates per dialogue."""

from importlib.resources import files
from pathlib import Path


def toy_paths() -> tuple[Path, Path]:
    """(dialogues, candidates) paths of the bundled toy corpus."""
    root = files(__name__) / "toy"
    return Path(str(root / "dialogues.jsonl")), Path(str(root / "candidates.jsonl"))
