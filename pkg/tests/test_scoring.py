"""Semantic invariance, representative pick, coverage and faithfulness matrices."""

import numpy as np
import pytest

import oracles
from sicf.errors import DegenerateCoverageError
from sicf.providers import NliJudgment, SyntheticNli, SyntheticTagger
from sicf.scoring import (
    CoverageInputs,
    FaithfulnessInputs,
    NounType,
    SentenceInfo,
    coverage_matrix,
    dialogue_noun_types,
    faithfulness_matrix,
    faithfulness_penalty_default,
    noun_occurrences,
    representative_summary,
    semantic_invariance,
    sentence_noun_weight,
)


class TestSemanticInvariance:
    def test_identical_vectors_zero(self):
        assert semantic_invariance([np.ones(4)] * 3 ) == 0.0

    def test_two_point_value(self):
        assert semantic_invariance([np.array([0.0, 0.0]), np.array([2.0, 2.0])]) == 1.0

    def test_single_vector_zero(self):
        assert semantic_invariance([np.array([3.0, 1.0])]) == 0.0

    def test_matches_variance_oracle(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            k = int(rng.integers(1, 9))
            dim = int(rng.integers(1, 7))
            vecs = [rng.normal(size=dim) for _ in range(k)]
            assert semantic_invariance(vecs) == pytest.approx(
                oracles.variance_mean(vecs), abs=1e-12
            )

    def test_quadratic_scaling(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            vecs = [rng.normal(size=5) for _ in range(4)]
            c = float(rng.uniform(0.1, 3.0))
            assert semantic_invariance([c * v for v in vecs]) == pytest.approx(
                c * c * semantic_invariance(vecs), rel=1e-10
            )

    def test_permutation_invariant(self):
        rng = np.random.default_rng(7)
        vecs = [rng.normal(size=6) for _ in range(5)]
        perm = rng.permutation(5)
        assert semantic_invariance([vecs[i] for i in perm]) == pytest.approx(
            semantic_invariance(vecs), abs=1e-14
        )

    def test_dim_mismatch_rejected(self):
        with pytest.raises(ValueError):
            semantic_invariance([np.zeros(3), np.zeros(4)])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            semantic_invariance([])


class TestRepresentativeSummary:
    def test_middle_of_line(self):
        assert representative_summary([np.array([0.0]), np.array([1.0]), np.array([2.0])]) == 1

    def test_all_identical_picks_first(self):
        assert representative_summary([np.ones(3)] * 4) == 0

    def test_symmetric_pair_picks_first(self):
        assert representative_summary([np.array([0.0, 0.0]), np.array([4.0, 4.0])]) == 0

    def test_matches_brute_force(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            k = int(rng.integers(1, 8))
            vecs = [rng.normal(size=4) for _ in range(k)]
            assert representative_summary(vecs) == oracles.nearest_index(vecs)

    def test_translation_invariant(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            vecs = [rng.normal(size=4) for _ in range(5)]
            shift = rng.normal(size=4)
            assert representative_summary([v + shift for v in vecs]) == representative_summary(
                vecs
            )


def nt(surface, count=1, proper=False):
    return NounType(surface=surface, is_proper=proper, count=count)


class TestCoverageMatrix:
    def test_hand_example(self):
        inputs = CoverageInputs(
            dialogue_nouns=[(nt("a"), np.array([0.0])), (nt("b"), np.array([1.0]))],
            candidate_nouns=[[np.array([0.0])]],
        )
        matrix = coverage_matrix(inputs)
        assert np.allclose(matrix.values, [[0.0, 1.0]])

    def test_identical_nouns_row_of_zeros(self):
        vecs = [np.array([0.3, 0.7]), np.array([0.9, 0.1])]
        inputs = CoverageInputs(
            dialogue_nouns=[(nt("a"), vecs[0]), (nt("b"), vecs[1])],
            candidate_nouns=[list(vecs)],
        )
        assert np.allclose(coverage_matrix(inputs).values, 0.0)

    def test_zero_noun_candidate_gets_penalty_row(self):
        inputs = CoverageInputs(
            dialogue_nouns=[(nt("a", count=3), np.array([0.0]))],
            candidate_nouns=[[], [np.array([0.0])]],
        )
        matrix = coverage_matrix(inputs, penalty=2.0)
        assert np.allclose(matrix.values[0], 2.0)
        assert np.allclose(matrix.values[1], 0.0)
        assert matrix.penalty_cells == 1

    def test_weights_multiply_distances(self):
        inputs = CoverageInputs(
            dialogue_nouns=[(nt("a", count=4), np.array([0.0]))],
            candidate_nouns=[[np.array([0.5])]],
        )
        assert np.allclose(coverage_matrix(inputs).values, [[2.0]])

    def test_proper_noun_weight_capped(self):
        inputs = CoverageInputs(
            dialogue_nouns=[(nt("Anna", count=5, proper=True), np.array([0.0]))],
            candidate_nouns=[[np.array([0.5])]],
        )
        assert np.allclose(coverage_matrix(inputs).values, [[0.5]])

    def test_no_dialogue_nouns_raises_degenerate(self):
        inputs = CoverageInputs(dialogue_nouns=[], candidate_nouns=[[np.array([0.0])]])
        with pytest.raises(DegenerateCoverageError):
            coverage_matrix(inputs)

    def test_matches_brute_force_with_bounds(self):
        rng = np.random.default_rng(10)
        for _ in range(30):
            p = int(rng.integers(1, 6))
            dim = int(rng.integers(1, 5))
            counts = rng.integers(1, 4, size=p)
            proper = rng.random(size=p) < 0.3
            types = [nt(f"n{j}", int(counts[j]), bool(proper[j])) for j in range(p)]
            dialogue_vecs = [rng.normal(size=dim) for _ in range(p)]
            cand_nouns = [
                [rng.normal(size=dim) for _ in range(int(rng.integers(1, 5)))]
                for _ in range(int(rng.integers(1, 5)))
            ]
            inputs = CoverageInputs(
                dialogue_nouns=list(zip(types, dialogue_vecs)), candidate_nouns=cand_nouns
            )
            matrix = coverage_matrix(inputs)
            weights = [t.weight for t in types]
            want = oracles.coverage_rows(dialogue_vecs, weights, cand_nouns, penalty=2.0)
            assert np.allclose(matrix.values, want, atol=1e-10)
            all_vecs = dialogue_vecs + [v for cand in cand_nouns for v in cand]
            max_pairwise = max(
                float(np.linalg.norm(u - v)) for u in all_vecs for v in all_vecs
            )
            for j in range(p):
                for i in range(len(cand_nouns)):
                    assert 0.0 <= matrix.values[i][j] <= weights[j] * max_pairwise + 1e-12


class TestFaithfulnessMatrix:
    def judge_all(self, positive, negative):
        def nli(cand_idx, a, b, premise, hypothesis):
            return NliJudgment(positive=positive, negative=negative)

        return nli

    def test_hand_example_weights(self):
        inputs = FaithfulnessInputs(
            dialogue_sentences=[SentenceInfo("s one.", 2.0), SentenceInfo("s two.", 1.0)],
            candidate_sentences=[["any."]],
        )
        matrix = faithfulness_matrix(inputs, self.judge_all(1.0, 0.0))
        assert np.allclose(matrix.values, [[-2.0, -1.0]])

    def test_zero_weight_sentence_forced_to_penalty(self):
        inputs = FaithfulnessInputs(
            dialogue_sentences=[SentenceInfo("a.", 0.0), SentenceInfo("b.", 3.0)],
            candidate_sentences=[["x."], ["y."]],
        )
        matrix = faithfulness_matrix(inputs, self.judge_all(1.0, 0.0), penalty=9.0)
        assert np.allclose(matrix.values[:, 0], 9.0)
        assert np.allclose(matrix.values[:, 1], -3.0)

    def test_sentence_free_candidate_gets_penalty_row(self):
        inputs = FaithfulnessInputs(
            dialogue_sentences=[SentenceInfo("a.", 1.0)],
            candidate_sentences=[[], ["x."]],
        )
        matrix = faithfulness_matrix(inputs, self.judge_all(0.0, 1.0), penalty=5.0)
        assert np.allclose(matrix.values[0], 5.0)
        assert np.allclose(matrix.values[1], 1.0)

    def test_identical_sentences_most_faithful(self):
        turns = ["Anna brings the cake.", "Ben books the train."]
        tagger = SyntheticTagger()
        weights = [sentence_noun_weight(tagger.tag_tokens(t)) for t in turns]
        nli_model = SyntheticNli()

        def nli(cand_idx, a, b, premise, hypothesis):
            return nli_model.nli_score(premise, hypothesis)

        inputs = FaithfulnessInputs(
            dialogue_sentences=[SentenceInfo(t, w) for t, w in zip(turns, weights)],
            candidate_sentences=[list(turns)],
        )
        matrix = faithfulness_matrix(inputs, nli)
        assert np.allclose(matrix.values, [[-w for w in weights]])

    def test_default_penalty_is_worst_weighted_value(self):
        sentences = [SentenceInfo("a.", 2.0), SentenceInfo("b.", 5.0)]
        assert faithfulness_penalty_default(sentences) == 5.0

    def test_min_over_candidate_sentences(self):
        judgments = {0: NliJudgment(0.2, 0.8), 1: NliJudgment(0.9, 0.1)}

        def nli(cand_idx, a, b, premise, hypothesis):
            return judgments[b]

        inputs = FaithfulnessInputs(
            dialogue_sentences=[SentenceInfo("a.", 1.0)],
            candidate_sentences=[["first.", "second."]],
        )
        matrix = faithfulness_matrix(inputs, nli)
        assert np.allclose(matrix.values, [[-0.8]])


class TestNounExtraction:
    tagger = SyntheticTagger()

    def tags_for(self, turns):
        return [self.tagger.tag_tokens(t) for t in turns]

    def test_types_dedupe_and_count(self):
        types = dialogue_noun_types(
            self.tags_for(["The party is a party.", "Anna loves the party."])
        )
        by_surface = {t.surface.lower(): t for t in types}
        assert by_surface["party"].count == 3
        assert not by_surface["party"].is_proper
        assert by_surface["party"].weight == 3.0
        assert by_surface["anna"].is_proper

    def test_proper_type_weight_capped_at_one(self):
        types = dialogue_noun_types(self.tags_for(["Anna met Anna.", "Anna again."]))
        (anna,) = [t for t in types if t.surface.lower() == "anna"]
        assert anna.count == 3
        assert anna.weight == 1.0

    def test_first_occurrence_order(self):
        types = dialogue_noun_types(self.tags_for(["Ben plans a picnic.", "The cake and Ben."]))
        assert [t.surface.lower() for t in types] == ["ben", "picnic", "the", "cake"]

    def test_case_insensitive_identity_merges(self):
        # "Party" tags as proper (capitalized); merged with lowercase "party"
        # the type counts both occurrences but is capped as proper.
        types = dialogue_noun_types(self.tags_for(["Party time.", "the party."]))
        (party,) = [t for t in types if t.surface.lower() == "party"]
        assert party.count == 2
        assert party.is_proper
        assert party.weight == 1.0

    def test_noun_occurrences_keep_repeats(self):
        tags = self.tagger.tag_tokens("the party after the party")
        assert noun_occurrences(tags) == ["party", "party"]

    def test_sentence_weight_caps_proper_per_sentence(self):
        tags = self.tagger.tag_tokens("Anna and Anna share a cake with Ben")
        # Anna counts once, Ben once, cake once.
        assert sentence_noun_weight(tags) == 3.0

    def test_sentence_weight_counts_common_noun_repeats(self):
        tags = self.tagger.tag_tokens("cake cake cake")
        assert sentence_noun_weight(tags) == 3.0
