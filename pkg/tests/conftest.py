"""Shared fixtures: toy corpus paths, a synthetic export-bundle writer, and
run-config scaffolding for CLI tests."""

import json
from pathlib import Path

import pytest

from sicf.corpus import load_candidates, load_corpus
from sicf.data import toy_paths
from sicf.providers import SyntheticProviderSet
from sicf.scoring import dialogue_noun_types, noun_occurrences
from sicf.text import split_sentences


@pytest.fixture(scope="session")
def toy_files():
    dialogues, candidates = toy_paths()
    assert dialogues.exists() and candidates.exists()
    return dialogues, candidates


def write_export_bundle(dialogues_path, candidates_path, out_dir, dim=16, seed=0):
    """Write a complete embeddings/tags/nli export bundle using the synthetic
    providers and the engine's addressing rules. Returns the three paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    providers = SyntheticProviderSet(dim=dim, seed=seed)
    split = load_corpus(dialogues_path, kind="auto")
    candidate_sets = load_candidates(candidates_path)

    emb_path = out_dir / "embeddings.jsonl"
    tag_path = out_dir / "tags.jsonl"
    nli_path = out_dir / "nli.jsonl"

    def token_records(tags):
        return [{"surface": t.surface, "tag": t.tag, "position": t.position} for t in tags]

    with emb_path.open("w", encoding="utf-8") as emb, tag_path.open(
        "w", encoding="utf-8"
    ) as tag, nli_path.open("w", encoding="utf-8") as nli:

        def emit(fh, record):
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")

        for dialogue in sorted(split.dialogues(), key=lambda d: d.id):
            did = dialogue.id
            cands = candidate_sets[did].candidates

            turn_tags = providers.dialogue_turn_tags(dialogue)
            flat = []
            position = 0
            for tokens in turn_tags:
                for tok in tokens:
                    flat.append(
                        {"surface": tok.surface, "tag": tok.tag, "position": position}
                    )
                    position += 1
            emit(tag, {"id": did, "scope": "dialogue", "tokens": flat})

            noun_types = dialogue_noun_types(turn_tags)
            for j, nt in enumerate(noun_types):
                emit(
                    emb,
                    {
                        "id": did,
                        "role": "dialogue_noun",
                        "index": [j],
                        "vector": list(providers.dialogue_noun_embedding(did, j, nt.surface)),
                    },
                )

            h = len(dialogue.turns)
            for i, text in enumerate(cands):
                cand_tags = providers.candidate_tags(did, i, text)
                emit(
                    tag,
                    {"id": did, "scope": "candidate", "cand_idx": i, "tokens": token_records(cand_tags)},
                )
                emit(
                    emb,
                    {
                        "id": did,
                        "role": "candidate_text",
                        "index": [i],
                        "vector": list(providers.candidate_embedding(did, i, text)),
                    },
                )
                for occ, surface in enumerate(noun_occurrences(cand_tags)):
                    emit(
                        emb,
                        {
                            "id": did,
                            "role": "summary_noun",
                            "index": [i, occ],
                            "vector": list(
                                providers.candidate_noun_embedding(did, i, occ, surface)
                            ),
                        },
                    )
                sentences = split_sentences(text)
                for a in range(h):
                    for b, hypothesis in enumerate(sentences):
                        judgment = providers.nli(did, i, a, b, dialogue.turns[a], hypothesis)
                        emit(
                            nli,
                            {
                                "id": did,
                                "cand_idx": i,
                                "premise_idx": a,
                                "hypothesis_idx": b,
                                "positive": judgment.positive,
                                "negative": judgment.negative,
                            },
                        )
    return emb_path, tag_path, nli_path


def write_config(path, dialogues, candidates, **overrides) -> Path:
    cfg = {
        "dialogues": str(dialogues),
        "candidates": str(candidates),
        "provider": "synthetic",
        "k": 4,
        "out": str(Path(path).parent / "out"),
    }
    cfg.update(overrides)
    path = Path(path)
    path.write_text(json.dumps(cfg, indent=2), encoding="utf-8")
    return path


@pytest.fixture()
def toy_config(tmp_path, toy_files):
    dialogues, candidates = toy_files
    return write_config(tmp_path / "run.json", dialogues, candidates)
