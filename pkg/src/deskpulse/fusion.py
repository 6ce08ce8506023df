"""Majority-vote fusion of per-window modality predictions.

Each voting modality (posture, face, speech) contributes at most one vote
per window. The fused emotion is the plurality winner; ties go to the tied
emotion voted by the highest-priority modality (default Face > Speech >
Posture). Every voted emotion is ranked with its empirical probability,
an exact rational votes/voters, serialized as "2/3" rather than a float.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .classify.windows import ModalityPrediction
from .errors import DuplicateModality, EmptyVotes, ValidationError
from .model import DEFAULT_TIE_ORDER, EMOTIONS, Emotion, Modality


@dataclass(frozen=True)
class FusedPrediction:
    window_start: int
    window_end: int
    ranked: tuple[tuple[Emotion, Fraction], ...]
    top: Emotion

    @property
    def probabilities(self) -> dict[Emotion, Fraction]:
        return dict(self.ranked)


@dataclass(frozen=True)
class SessionSummary:
    """Per-emotion share of fused windows whose top is that emotion."""

    rates: Mapping[Emotion, Fraction]
    window_count: int

    def argmax(self) -> frozenset[Emotion]:
        """All emotions tied at the highest rate; empty when no windows."""
        if self.window_count == 0:
            return frozenset()
        best = max(self.rates.values())
        return frozenset(e for e, r in self.rates.items() if r == best)


def fuse(
    votes: Sequence[ModalityPrediction],
    tie_order: Sequence[Modality] = DEFAULT_TIE_ORDER,
) -> FusedPrediction:
    """Combine one window's modality votes into a ranked fused prediction."""
    if not votes:
        raise EmptyVotes("fusion requires at least one modality vote")
    modalities = [v.modality for v in votes]
    if len(set(modalities)) != len(modalities):
        raise DuplicateModality(f"duplicate modality votes: {modalities}")
    window = (votes[0].window_start, votes[0].window_end)
    for v in votes[1:]:
        if (v.window_start, v.window_end) != window:
            raise ValidationError(
                f"votes span different windows: {window} vs "
                f"({v.window_start}, {v.window_end})"
            )
    priority = {m: i for i, m in enumerate(tie_order)}
    counts = Counter(v.emotion for v in votes)
    best_priority = {}
    for v in votes:
        p = priority[v.modality]
        cur = best_priority.get(v.emotion)
        if cur is None or p < cur:
            best_priority[v.emotion] = p
    n = len(votes)
    order = sorted(counts, key=lambda e: (-counts[e], best_priority[e]))
    ranked = tuple((e, Fraction(counts[e], n)) for e in order)
    return FusedPrediction(window[0], window[1], ranked, order[0])


def summarize_session(fused: Sequence[FusedPrediction]) -> SessionSummary:
    """Detection rate per emotion over a sequence of fused windows."""
    n = len(fused)
    tops = Counter(f.top for f in fused)
    rates = {
        e: (Fraction(tops.get(e, 0), n) if n else Fraction(0)) for e in EMOTIONS
    }
    return SessionSummary(rates=rates, window_count=n)
