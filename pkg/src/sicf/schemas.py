"""Cross-file validation of adapter export bundles.

Checks that a (dialogues, candidates, embeddings, tags, NLI) file set is
complete and internally consistent with the engine's addressing rules:
tag token streams line up with the engine tokenizer, every required
embedding key exists exactly once, and the NLI grid covers every
(dialogue sentence, candidate sentence) pair with no extras.

Returns human-readable error strings; an empty list means the bundle is
ready for file-backed scoring.
"""

from .corpus import load_candidates, load_corpus
from .errors import SicfError
from .providers import (
    FileEmbeddingStore,
    FileNliStore,
    FileTagStore,
    split_dialogue_tokens,
)
from .scoring import dialogue_noun_types, noun_occurrences
from .text import split_sentences, tokenize


def validate_export_bundle(
    dialogues_path,
    candidates_path,
    embeddings_path,
    tags_path,
    nli_path,
    expected_k: int | None = None,
) -> list[str]:
    errors: list[str] = []

    try:
        split = load_corpus(dialogues_path, kind="auto")
    except SicfError as exc:
        return [f"dialogues: {exc}"]
    try:
        candidate_sets = load_candidates(candidates_path)
    except SicfError as exc:
        return [f"candidates: {exc}"]

    dialogue_ids = [d.id for d in split.dialogues()]
    missing = [did for did in dialogue_ids if did not in candidate_sets]
    for did in missing:
        errors.append(f"candidates: no candidate set for dialogue {did!r}")
    extra = [did for did in sorted(candidate_sets) if did not in set(dialogue_ids)]
    for did in extra:
        errors.append(f"candidates: unknown dialogue id {did!r}")
    k_values = {len(s.candidates) for s in candidate_sets.values()}
    if len(k_values) > 1:
        errors.append(f"candidates: candidate count not uniform across dialogues: {sorted(k_values)}")
    if expected_k is not None and k_values and k_values != {expected_k}:
        errors.append(f"candidates: expected k={expected_k}, found {sorted(k_values)}")
    if errors:
        return errors

    try:
        embeddings = FileEmbeddingStore(embeddings_path)
        tags = FileTagStore(tags_path)
        nli = FileNliStore(nli_path)
    except SicfError as exc:
        return [str(exc)]

    wanted_embeddings: set[tuple[str, str, tuple[int, ...]]] = set()
    wanted_nli: set[tuple[str, int, int, int]] = set()

    for dialogue in split.dialogues():
        did = dialogue.id
        cands = candidate_sets[did].candidates

        try:
            turn_tags = split_dialogue_tokens(dialogue, tags.dialogue_tokens(did))
        except SicfError as exc:
            errors.append(f"tags: {exc}")
            continue
        noun_types = dialogue_noun_types(turn_tags)
        for j in range(len(noun_types)):
            wanted_embeddings.add((did, "dialogue_noun", (j,)))

        h = len(dialogue.turns)
        for i, text in enumerate(cands):
            wanted_embeddings.add((did, "candidate_text", (i,)))
            try:
                cand_tokens = tags.candidate_tokens(did, i)
            except SicfError as exc:
                errors.append(f"tags: {exc}")
                continue
            if len(cand_tokens) != len(tokenize(text)):
                errors.append(
                    f"tags: candidate {did}/{i} has {len(cand_tokens)} tokens, "
                    f"tokenizer yields {len(tokenize(text))}"
                )
                continue
            for occ in range(len(noun_occurrences(list(cand_tokens)))):
                wanted_embeddings.add((did, "summary_noun", (i, occ)))
            z = len(split_sentences(text))
            for a in range(h):
                for b in range(z):
                    wanted_nli.add((did, i, a, b))

    if errors:
        return errors

    have_embeddings = embeddings.keys()
    for key in sorted(wanted_embeddings - have_embeddings):
        errors.append(f"embeddings: missing {key[0]}/{key[1]}/{'.'.join(map(str, key[2]))}")
    for key in sorted(have_embeddings - wanted_embeddings):
        errors.append(f"embeddings: unexpected {key[0]}/{key[1]}/{'.'.join(map(str, key[2]))}")

    have_nli = nli.keys()
    for key in sorted(wanted_nli - have_nli):
        errors.append(f"nli: missing {'/'.join(map(str, key))}")
    for key in sorted(have_nli - wanted_nli):
        errors.append(f"nli: unexpected {'/'.join(map(str, key))}")
    if len(have_nli) != len(wanted_nli) and not errors:
        errors.append(f"nli: expected {len(wanted_nli)} records, found {len(have_nli)}")

    return errors
