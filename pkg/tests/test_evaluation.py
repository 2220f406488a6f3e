"""Metrics (ROUGE-1/2/L, embedding F) and the evaluation protocols."""

import itertools

import numpy as np
import pytest

import oracles
from sicf.evaluation import (
    ELIM_RATIOS,
    EvalSample,
    corpus_metric,
    elimination_curve,
    emb_f,
    improved_ratio,
    rouge_l,
    rouge_n,
    score_pair,
)

VOCAB = ["the", "cat", "sat", "mat", "dog", "ran", "park", "big", "red", "fast", "slow", "home"]


def random_tokens(rng, max_len=12, min_len=0):
    n = int(rng.integers(min_len, max_len + 1))
    return [VOCAB[int(rng.integers(0, len(VOCAB)))] for _ in range(n)]


class TestRougeN:
    def test_identical(self):
        assert rouge_n(["a", "b", "c"], ["a", "b", "c"], 1) == 1.0
        assert rouge_n(["a", "b", "c"], ["a", "b", "c"], 2) == 1.0

    def test_hand_example(self):
        # P = 2/3, R = 1 -> F = 0.8
        assert rouge_n(["the", "cat", "sat"], ["the", "cat"], 1) == pytest.approx(0.8)

    def test_disjoint(self):
        assert rouge_n(["a", "b"], ["c", "d"], 1) == 0.0

    def test_both_empty(self):
        assert rouge_n([], [], 1) == 1.0
        assert rouge_n(["a"], [], 1) == 0.0

    def test_clipping(self):
        # "a a a" vs "a": overlap clipped to 1 -> P=1/3, R=1 -> F=0.5
        assert rouge_n(["a", "a", "a"], ["a"], 1) == pytest.approx(0.5)

    def test_bigram_short_sequences(self):
        assert rouge_n(["a"], ["a"], 2) == 1.0  # no bigrams on either side

    def test_invalid_n(self):
        with pytest.raises(ValueError):
            rouge_n(["a"], ["a"], 3)


class TestRougeL:
    def test_identical(self):
        assert rouge_l(["a", "b", "c"], ["a", "b", "c"]) == 1.0

    def test_hand_example(self):
        # LCS("a b c d", "a c d b") = 3 -> P = R = 3/4
        assert rouge_l(["a", "b", "c", "d"], ["a", "c", "d", "b"]) == pytest.approx(0.75)

    def test_disjoint(self):
        assert rouge_l(["a", "b"], ["c", "d"]) == 0.0

    def test_both_empty(self):
        assert rouge_l([], []) == 1.0
        assert rouge_l([], ["a"]) == 0.0


class TestMetricOracleEquivalence:
    def test_rouge_matches_reference_exactly(self):
        rng = np.random.default_rng(30)
        for _ in range(50):
            cand = random_tokens(rng)
            ref = random_tokens(rng)
            assert rouge_n(cand, ref, 1) == oracles.rouge_n(cand, ref, 1)
            assert rouge_n(cand, ref, 2) == oracles.rouge_n(cand, ref, 2)
            assert rouge_l(cand, ref) == oracles.rouge_l(cand, ref)

    def test_emb_f_matches_exhaustive_matcher(self):
        from sicf.providers import SyntheticEmbedder

        embed = SyntheticEmbedder(dim=8, seed=3).embed_text
        rng = np.random.default_rng(31)
        for _ in range(50):
            cand = random_tokens(rng, min_len=1)
            ref = random_tokens(rng, min_len=1)
            assert emb_f(cand, ref, embed) == pytest.approx(
                oracles.emb_f(cand, ref, embed), abs=1e-9
            )


class TestEmbF:
    def basis_embedder(self):
        basis = {"a": [1.0, 0.0, 0.0], "b": [0.0, 1.0, 0.0], "c": [0.0, 0.0, 1.0]}
        return lambda token: basis[token]

    def test_identical_tokens(self):
        embed = self.basis_embedder()
        assert emb_f(["a", "b"], ["a", "b"], embed) == pytest.approx(1.0)

    def test_orthogonal_tokens(self):
        embed = self.basis_embedder()
        assert emb_f(["a"], ["b"], embed) == 0.0

    def test_partial_overlap(self):
        embed = self.basis_embedder()
        # P = (1 + 0)/2, R = (1 + 0)/2 -> F = 0.5
        assert emb_f(["a", "b"], ["a", "c"], embed) == pytest.approx(0.5)

    def test_empty_side_rejected(self):
        with pytest.raises(ValueError):
            emb_f([], ["a"], self.basis_embedder())

    def test_clamped_into_unit_interval(self):
        opposed = {"a": [1.0, 0.0], "b": [-1.0, 0.0]}
        value = emb_f(["a"], ["b"], lambda t: opposed[t])
        assert 0.0 <= value <= 1.0


class TestScorePair:
    def test_tokenizes_and_lowercases(self):
        assert score_pair("rouge1", "The Cat!", "the cat") == 1.0

    def test_empty_texts(self):
        assert score_pair("rouge1", "", "") == 1.0
        assert score_pair("rouge1", "words here", "") == 0.0
        assert score_pair("emb_f", "", "") == 1.0
        assert score_pair("emb_f", "words", "") == 0.0

    def test_self_score_is_one_for_all_metrics(self):
        text = "Anna and Ben meet at the party."
        for metric in ("rouge1", "rouge2", "rougel", "emb_f"):
            assert score_pair(metric, text, text) == pytest.approx(1.0)

    def test_unknown_metric(self):
        from sicf.errors import ConfigError

        with pytest.raises(ConfigError):
            score_pair("bleu", "a", "b")


def make_samples(rng, n):
    """Synthetic corpus with a quality gradient: sample i keeps a prefix of
    its reference and pads with off-vocabulary noise."""
    samples = []
    for i in range(n):
        ref_tokens = random_tokens(rng, max_len=10, min_len=6)
        keep = int(rng.integers(0, len(ref_tokens) + 1))
        noise = [f"zz{int(rng.integers(0, 50))}" for _ in range(len(ref_tokens) - keep)]
        samples.append(
            EvalSample(
                sample_id=f"s{i:03d}",
                prediction=" ".join(ref_tokens[:keep] + noise),
                reference=" ".join(ref_tokens),
            )
        )
    return samples


class TestEliminationCurve:
    def test_first_point_is_unmodified_corpus_metric(self):
        rng = np.random.default_rng(32)
        samples = make_samples(rng, 12)
        order = [s.sample_id for s in samples]
        curve = elimination_curve(samples, order, "rouge1")
        assert curve.values[0] == pytest.approx(corpus_metric(samples, "rouge1"))

    def test_replaced_samples_score_one(self):
        samples = [
            EvalSample("a", "bad summary", "good reference text"),
            EvalSample("b", "other words", "entirely different reference"),
        ]
        curve = elimination_curve(samples, ["a", "b"], "rouge1")
        # r=0.5 replaces floor(2*0.5)=1 sample; r=0.9 still replaces 1.
        base = corpus_metric(samples, "rouge1")
        assert curve.values[5] == pytest.approx((1.0 + score_pair("rouge1", samples[1].prediction, samples[1].reference)) / 2)
        assert curve.values[0] == pytest.approx(base)

    def test_means(self):
        rng = np.random.default_rng(33)
        samples = make_samples(rng, 10)
        order = [s.sample_id for s in samples]
        curve = elimination_curve(samples, order, "rougel")
        assert curve.mean_0_50 == pytest.approx(float(np.mean(curve.values[:6])))
        assert curve.mean_0_90 == pytest.approx(float(np.mean(curve.values)))
        assert curve.ratios == ELIM_RATIOS

    def test_non_permutation_rejected(self):
        samples = make_samples(np.random.default_rng(34), 4)
        with pytest.raises(ValueError):
            elimination_curve(samples, ["s000", "s001", "s001", "s003"], "rouge1")

    def test_worst_first_oracle_dominates_on_four_samples(self):
        rng = np.random.default_rng(35)
        samples = make_samples(rng, 4)
        per_sample = {
            s.sample_id: score_pair("rouge1", s.prediction, s.reference) for s in samples
        }
        oracle_order = sorted(per_sample, key=lambda sid: (per_sample[sid], sid))
        oracle_mean = elimination_curve(samples, oracle_order, "rouge1").mean_0_90
        for perm in itertools.permutations(per_sample):
            mean = elimination_curve(samples, list(perm), "rouge1").mean_0_90
            assert oracle_mean >= mean - 1e-12


class TestImprovedRatio:
    def test_paper_style_values(self):
        assert improved_ratio(45.85, 43.90, 44.92) == pytest.approx(1.912, abs=5e-4)
        assert improved_ratio(77.94, 76.60, 79.09) == pytest.approx(0.538, abs=5e-4)

    def test_oracle_match_is_exactly_one(self):
        assert improved_ratio(44.92, 43.90, 44.92) == 1.0

    def test_undefined_when_no_oracle_gain(self):
        with pytest.raises(ValueError):
            improved_ratio(44.0, 43.0, 43.0)

    def test_affine_invariance(self):
        rng = np.random.default_rng(36)
        for _ in range(50):
            ini, ora, m = rng.normal(size=3)
            if ora == ini:
                continue
            scale = float(rng.uniform(0.1, 5.0))
            shift = float(rng.normal())
            assert improved_ratio(m * scale + shift, ini * scale + shift, ora * scale + shift) == pytest.approx(
                improved_ratio(m, ini, ora), rel=1e-9
            )
