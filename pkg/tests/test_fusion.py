"""Fusion arithmetic, tie-breaks, and exhaustive oracle equivalence."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deskpulse.classify.windows import ModalityPrediction
from deskpulse.errors import DuplicateModality, EmptyVotes, ValidationError
from deskpulse.fusion import fuse, summarize_session
from deskpulse.model import DEFAULT_TIE_ORDER, EMOTIONS, Emotion, Modality

from .oracles import fuse_oracle, rank_oracle

_RULES = {
    Modality.POSTURE: "2",
    Modality.FACE: "5",
    Modality.SPEECH: "dictionary",
}


def vote(modality, emotion, start=0, end=9000):
    rule = None if emotion == Emotion.NEUTRAL else _RULES[modality]
    return ModalityPrediction(modality, start, end, emotion, rule)


def fuse3(face, speech, posture):
    return fuse(
        [
            vote(Modality.FACE, face),
            vote(Modality.SPEECH, speech),
            vote(Modality.POSTURE, posture),
        ]
    )


class TestExamples:
    def test_two_thirds_one_third(self):
        fused = fuse3(Emotion.HAPPY, Emotion.HAPPY, Emotion.NEUTRAL)
        assert fused.top == Emotion.HAPPY
        assert fused.ranked == (
            (Emotion.HAPPY, Fraction(2, 3)),
            (Emotion.NEUTRAL, Fraction(1, 3)),
        )

    def test_unanimous(self):
        fused = fuse3(Emotion.SAD, Emotion.SAD, Emotion.SAD)
        assert fused.top == Emotion.SAD
        assert fused.ranked == ((Emotion.SAD, Fraction(1, 1)),)

    def test_three_way_tie_face_priority(self):
        fused = fuse3(Emotion.ANGER, Emotion.HAPPY, Emotion.SAD)
        assert fused.top == Emotion.ANGER
        assert [p for _, p in fused.ranked] == [Fraction(1, 3)] * 3
        assert [e for e, _ in fused.ranked] == [
            Emotion.ANGER,
            Emotion.HAPPY,
            Emotion.SAD,
        ]

    def test_probabilities_sum_to_one(self):
        for a, b, c in itertools.product(list(Emotion)[:3], repeat=3):
            fused = fuse3(a, b, c)
            assert sum(p for _, p in fused.ranked) == 1

    def test_custom_tie_order(self):
        votes = [
            vote(Modality.FACE, Emotion.ANGER),
            vote(Modality.SPEECH, Emotion.HAPPY),
            vote(Modality.POSTURE, Emotion.SAD),
        ]
        fused = fuse(votes, (Modality.POSTURE, Modality.SPEECH, Modality.FACE))
        assert fused.top == Emotion.SAD


class TestErrors:
    def test_empty(self):
        with pytest.raises(EmptyVotes):
            fuse([])

    def test_duplicate_modality(self):
        with pytest.raises(DuplicateModality):
            fuse([vote(Modality.FACE, Emotion.HAPPY), vote(Modality.FACE, Emotion.SAD)])

    def test_window_mismatch(self):
        with pytest.raises(ValidationError):
            fuse(
                [
                    vote(Modality.FACE, Emotion.HAPPY, 0, 9000),
                    vote(Modality.SPEECH, Emotion.HAPPY, 9000, 18_000),
                ]
            )


class TestExhaustiveOracle:
    def test_all_343_three_modality_cases(self):
        for face, speech, posture in itertools.product(EMOTIONS, repeat=3):
            fused = fuse3(face, speech, posture)
            votes = [
                (Modality.FACE, face),
                (Modality.SPEECH, speech),
                (Modality.POSTURE, posture),
            ]
            top, probs = fuse_oracle(votes, DEFAULT_TIE_ORDER)
            assert fused.top == top, votes
            assert dict(fused.ranked) == probs, votes
            assert [e for e, _ in fused.ranked] == rank_oracle(votes, DEFAULT_TIE_ORDER)

    def test_all_49_two_modality_cases_each_pair(self):
        pairs = [
            (Modality.FACE, Modality.SPEECH),
            (Modality.FACE, Modality.POSTURE),
            (Modality.SPEECH, Modality.POSTURE),
        ]
        for m1, m2 in pairs:
            for e1, e2 in itertools.product(EMOTIONS, repeat=2):
                fused = fuse([vote(m1, e1), vote(m2, e2)])
                top, probs = fuse_oracle([(m1, e1), (m2, e2)], DEFAULT_TIE_ORDER)
                assert fused.top == top
                assert dict(fused.ranked) == probs
                assert all(p in (Fraction(1, 2), Fraction(1, 1)) for p in probs.values())

    @given(st.permutations(list(Modality)), st.lists(st.sampled_from(EMOTIONS), min_size=3, max_size=3))
    def test_vote_permutation_invariance(self, order, emotions):
        by_modality = dict(zip((Modality.FACE, Modality.SPEECH, Modality.POSTURE), emotions))
        votes = [vote(m, by_modality[m]) for m in order]
        fused = fuse(votes)
        baseline = fuse3(
            by_modality[Modality.FACE],
            by_modality[Modality.SPEECH],
            by_modality[Modality.POSTURE],
        )
        assert fused == baseline


class TestSummaries:
    def test_counting(self):
        fused = [fuse3(Emotion.HAPPY, Emotion.HAPPY, Emotion.HAPPY)] * 8 + [
            fuse3(Emotion.NEUTRAL, Emotion.NEUTRAL, Emotion.NEUTRAL)
        ] * 2
        summary = summarize_session(fused)
        assert summary.window_count == 10
        assert summary.rates[Emotion.HAPPY] == Fraction(8, 10)
        assert summary.rates[Emotion.NEUTRAL] == Fraction(2, 10)
        assert sum(summary.rates.values()) == 1
        assert summary.argmax() == {Emotion.HAPPY}

    def test_empty(self):
        summary = summarize_session([])
        assert summary.window_count == 0
        assert all(r == 0 for r in summary.rates.values())
        assert summary.argmax() == frozenset()

    def test_single_vote_fusion(self):
        fused = fuse([vote(Modality.POSTURE, Emotion.SAD)])
        assert fused.top == Emotion.SAD
        assert fused.ranked == ((Emotion.SAD, Fraction(1, 1)),)
