"""Corpus-level scoring, artifact round-trips, and evaluation plumbing."""

import numpy as np
import pytest

from conftest import write_export_bundle
from sicf.config import RunConfig
from sicf.corpus import load_candidates, load_corpus
from sicf.errors import ConfigError, CorpusValidationError
from sicf.fusion import fuse_sicf
from sicf.pipeline import (
    eval_samples,
    grid_search,
    read_ranks,
    read_scores,
    score_corpus,
    score_dialogue,
    worst_first_order,
    write_ranks,
    write_scores,
)
from sicf.providers import SyntheticProviderSet


def toy_config(toy_files, out, **overrides):
    dialogues, candidates = toy_files
    base = dict(
        dialogues=str(dialogues),
        candidates=str(candidates),
        provider="synthetic",
        k=4,
        out=str(out),
    )
    base.update(overrides)
    return RunConfig(**base)


class TestScoreCorpus:
    def test_scores_every_dialogue_sorted(self, toy_files, tmp_path):
        cfg = toy_config(toy_files, tmp_path)
        bundles, debug, _ = score_corpus(cfg)
        assert len(bundles) == 20
        ids = [b.dialogue_id for b in bundles]
        assert ids == sorted(ids)
        assert debug == []
        for b in bundles:
            assert b.k == 4
            assert np.isfinite([b.lambda_sein, b.lambda_cov, b.lambda_fai]).all()

    def test_k_mismatch_rejected(self, toy_files, tmp_path):
        cfg = toy_config(toy_files, tmp_path, k=3)
        with pytest.raises(CorpusValidationError):
            score_corpus(cfg)

    def test_threading_matches_serial(self, toy_files, tmp_path):
        serial, _, _ = score_corpus(toy_config(toy_files, tmp_path / "a"))
        threaded, _, _ = score_corpus(toy_config(toy_files, tmp_path / "b", threads=4))
        assert serial == threaded

    def test_debug_matrices_emitted(self, toy_files, tmp_path):
        cfg = toy_config(toy_files, tmp_path, debug_matrices=True)
        _, debug, _ = score_corpus(cfg)
        kinds = {d["kind"] for d in debug}
        assert kinds == {"COVERAGE", "FAITHFULNESS"}
        sample = debug[0]
        assert len(sample["values"]) == sample["rows"]
        assert len(sample["values"][0]) == sample["cols"]

    def test_file_provider_reproduces_synthetic_scores(self, toy_files, tmp_path):
        dialogues, candidates = toy_files
        emb, tags, nli = write_export_bundle(dialogues, candidates, tmp_path)
        synthetic, _, _ = score_corpus(toy_config(toy_files, tmp_path / "s"))
        from_files, _, _ = score_corpus(
            toy_config(
                toy_files,
                tmp_path / "f",
                provider="files",
                embeddings_file=str(emb),
                tags_file=str(tags),
                nli_file=str(nli),
            )
        )
        for a, b in zip(synthetic, from_files):
            assert a.dialogue_id == b.dialogue_id
            assert a.lambda_sein == pytest.approx(b.lambda_sein, abs=1e-12)
            assert a.lambda_cov == pytest.approx(b.lambda_cov, abs=1e-12)
            assert a.lambda_fai == pytest.approx(b.lambda_fai, abs=1e-12)
            assert a.representative_idx == b.representative_idx


class TestScoreDialogue:
    def test_no_noun_dialogue_flagged_degenerate(self, tmp_path):
        from sicf.corpus import Dialogue, SummarySet

        dialogue = Dialogue(id="x", turns=("went away quickly.",))
        summary_set = SummarySet(dialogue_id="x", candidates=("they left.", "gone now."))
        cfg = RunConfig(
            dialogues="unused.jsonl", candidates="unused.jsonl", k=2, out=str(tmp_path)
        )
        bundle, _ = score_dialogue(dialogue, summary_set, SyntheticProviderSet(), cfg)
        assert bundle.lambda_cov == 0.0
        assert "coverage-degenerate" in bundle.flags

    def test_candidate_permutation_leaves_lambdas(self, toy_files, tmp_path):
        dialogues, candidates = toy_files
        split = load_corpus(dialogues)
        sets = load_candidates(candidates)
        cfg = toy_config(toy_files, tmp_path)
        providers = SyntheticProviderSet()
        rng = np.random.default_rng(40)
        for dialogue in split.dialogues()[:5]:
            original = sets[dialogue.id]
            base, _ = score_dialogue(dialogue, original, providers, cfg)
            perm = rng.permutation(len(original.candidates))
            shuffled = type(original)(
                dialogue_id=original.dialogue_id,
                candidates=tuple(original.candidates[i] for i in perm),
            )
            permuted, _ = score_dialogue(dialogue, shuffled, providers, cfg)
            assert permuted.lambda_sein == pytest.approx(base.lambda_sein, abs=1e-12)
            assert permuted.lambda_cov == pytest.approx(base.lambda_cov, abs=1e-12)
            assert permuted.lambda_fai == pytest.approx(base.lambda_fai, abs=1e-12)


class TestArtifacts:
    def test_scores_round_trip(self, toy_files, tmp_path):
        cfg = toy_config(toy_files, tmp_path)
        bundles, _, _ = score_corpus(cfg)
        path = tmp_path / "scores.jsonl"
        write_scores(bundles, path)
        assert read_scores(path) == bundles

    def test_ranks_round_trip(self, toy_files, tmp_path):
        cfg = toy_config(toy_files, tmp_path)
        bundles, _, _ = score_corpus(cfg)
        table = fuse_sicf(bundles, 1.0, 1.0, 1.0)
        path = tmp_path / "ranks.jsonl"
        write_ranks(table, path)
        rows = read_ranks(path)
        assert sorted(rows, key=lambda r: r.dialogue_id) == sorted(
            table.rows, key=lambda r: r.dialogue_id
        )


class TestEvalPlumbing:
    def test_worst_first_order_ascends(self, toy_files, tmp_path):
        cfg = toy_config(toy_files, tmp_path)
        bundles, _, _ = score_corpus(cfg)
        table = fuse_sicf(bundles, 1.0, 1.0, 1.0)
        order = worst_first_order(table.rows)
        fused = {r.dialogue_id: r.lambda_sicf for r in table.rows}
        values = [fused[i] for i in order]
        assert values == sorted(values)

    def test_eval_samples_use_representative_candidate(self, toy_files, tmp_path):
        cfg = toy_config(toy_files, tmp_path)
        bundles, _, _ = score_corpus(cfg)
        table = fuse_sicf(bundles, 1.0, 1.0, 1.0)
        samples = eval_samples(cfg, table.rows)
        sets = load_candidates(cfg.candidates)
        reps = {b.dialogue_id: b.representative_idx for b in bundles}
        for sample in samples:
            assert sample.prediction == sets[sample.sample_id].candidates[reps[sample.sample_id]]

    def test_eval_samples_require_references(self, toy_files, tmp_path):
        dialogues, candidates = toy_files
        unlabeled = tmp_path / "unlabeled.jsonl"
        lines = dialogues.read_text(encoding="utf-8").splitlines()
        import json

        out = []
        for line in lines:
            rec = json.loads(line)
            rec.pop("summary", None)
            out.append(json.dumps(rec))
        unlabeled.write_text("\n".join(out) + "\n", encoding="utf-8")
        cfg = toy_config((unlabeled, candidates), tmp_path)
        bundles, _, _ = score_corpus(cfg)
        table = fuse_sicf(bundles, 1.0, 1.0, 1.0)
        with pytest.raises(CorpusValidationError):
            eval_samples(cfg, table.rows)


class TestGridSearch:
    def test_complete_enumeration(self, toy_files, tmp_path):
        cfg = toy_config(toy_files, tmp_path, metrics=["rouge1"])
        bundles, _, _ = score_corpus(cfg)
        rows = grid_search(cfg, bundles)
        assert len(rows) == 125
        invalid = [r for r in rows if not r["valid"]]
        assert len(invalid) == 1
        assert invalid[0]["alpha"] == invalid[0]["beta"] == invalid[0]["gamma"] == 0.0
        assert rows[-1] is invalid[0]
        valid_means = [r["mean_0_90"] for r in rows if r["valid"]]
        assert valid_means == sorted(valid_means, reverse=True)


class TestConfig:
    def test_unknown_phi_rejected(self, toy_files, tmp_path):
        with pytest.raises(ConfigError):
            toy_config(toy_files, tmp_path, phi="median")

    def test_threads_excluded_from_config_hash(self, toy_files, tmp_path):
        one = toy_config(toy_files, tmp_path, threads=1)
        four = toy_config(toy_files, tmp_path, threads=4)
        assert one.config_hash() == four.config_hash()

    def test_files_provider_requires_paths(self, toy_files, tmp_path):
        with pytest.raises(ConfigError):
            toy_config(toy_files, tmp_path, provider="files")
