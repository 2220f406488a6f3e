"""Export-bundle validation across the five ingestion files."""

import json

from conftest import write_export_bundle
from sicf.schemas import validate_export_bundle


def validate_toy(toy_files, tmp_path, **kwargs):
    dialogues, candidates = toy_files
    emb, tags, nli = write_export_bundle(dialogues, candidates, tmp_path)
    return validate_export_bundle(dialogues, candidates, emb, tags, nli, **kwargs), (
        emb,
        tags,
        nli,
    )


def drop_lines(path, predicate):
    lines = path.read_text(encoding="utf-8").splitlines()
    kept = [line for line in lines if not predicate(json.loads(line))]
    path.write_text("\n".join(kept) + "\n", encoding="utf-8")


class TestValidExport:
    def test_complete_bundle_has_no_errors(self, toy_files, tmp_path):
        errors, _ = validate_toy(toy_files, tmp_path)
        assert errors == []

    def test_expected_k_enforced(self, toy_files, tmp_path):
        errors, _ = validate_toy(toy_files, tmp_path, expected_k=7)
        assert errors and "expected k=7" in errors[0]


class TestBrokenExports:
    def test_missing_nli_record_reported(self, toy_files, tmp_path):
        dialogues, candidates = toy_files
        emb, tags, nli = write_export_bundle(dialogues, candidates, tmp_path)
        drop_lines(
            nli,
            lambda rec: rec["id"] == "d01"
            and rec["cand_idx"] == 0
            and rec["premise_idx"] == 0
            and rec["hypothesis_idx"] == 0,
        )
        errors = validate_export_bundle(dialogues, candidates, emb, tags, nli)
        assert any("nli: missing d01/0/0/0" in e for e in errors)

    def test_extra_embedding_reported(self, toy_files, tmp_path):
        dialogues, candidates = toy_files
        emb, tags, nli = write_export_bundle(dialogues, candidates, tmp_path)
        with emb.open("a", encoding="utf-8") as fh:
            fh.write(
                json.dumps(
                    {
                        "id": "d01",
                        "role": "candidate_text",
                        "index": [99],
                        "vector": [0.0] * 16,
                    }
                )
                + "\n"
            )
        errors = validate_export_bundle(dialogues, candidates, emb, tags, nli)
        assert any("embeddings: unexpected d01/candidate_text/99" in e for e in errors)

    def test_missing_candidate_tags_reported(self, toy_files, tmp_path):
        dialogues, candidates = toy_files
        emb, tags, nli = write_export_bundle(dialogues, candidates, tmp_path)
        drop_lines(tags, lambda rec: rec["scope"] == "candidate" and rec["id"] == "d02")
        errors = validate_export_bundle(dialogues, candidates, emb, tags, nli)
        assert any("d02" in e and "tag" in e for e in errors)

    def test_token_count_mismatch_reported(self, toy_files, tmp_path):
        dialogues, candidates = toy_files
        emb, tags, nli = write_export_bundle(dialogues, candidates, tmp_path)
        lines = tags.read_text(encoding="utf-8").splitlines()
        out = []
        for line in lines:
            rec = json.loads(line)
            if rec["scope"] == "dialogue" and rec["id"] == "d03":
                rec["tokens"] = rec["tokens"][:-1]
            out.append(json.dumps(rec))
        tags.write_text("\n".join(out) + "\n", encoding="utf-8")
        errors = validate_export_bundle(dialogues, candidates, emb, tags, nli)
        assert any("d03" in e and "token" in e for e in errors)

    def test_missing_candidate_set_reported(self, toy_files, tmp_path):
        dialogues, candidates = toy_files
        emb, tags, nli = write_export_bundle(dialogues, candidates, tmp_path)
        trimmed = tmp_path / "cand_trimmed.jsonl"
        drop = "d05"
        lines = [
            line
            for line in candidates.read_text(encoding="utf-8").splitlines()
            if json.loads(line)["id"] != drop
        ]
        trimmed.write_text("\n".join(lines) + "\n", encoding="utf-8")
        errors = validate_export_bundle(dialogues, trimmed, emb, tags, nli)
        assert any("no candidate set for dialogue 'd05'" in e for e in errors)
