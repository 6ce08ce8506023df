"""Aggregation of per-frame rule results into fixed-length window predictions.

Windows tile the frame stream without overlap; the trailing partial window
is dropped. A window predicts its most frequent emotion only when that
emotion is unique and covers at least ``frame_majority`` frames; anything
weaker is Neutral.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .. import kernels
from ..errors import ShortWindow, ValidationError
from ..model import EMOTION_IDS, EMOTIONS, NEUTRAL_ID, Emotion, Modality


@dataclass(frozen=True)
class ModalityPrediction:
    """One modality's emotion vote for one time window."""

    modality: Modality
    window_start: int
    window_end: int
    emotion: Emotion
    fired_rule: Optional[str] = None

    def __post_init__(self):
        if (self.emotion == Emotion.NEUTRAL) != (self.fired_rule is None):
            raise ValidationError(
                "fired_rule must be present exactly when the emotion is not Neutral"
            )


def classify_window(
    results: Sequence[tuple[Emotion, Optional[str]]],
    modality: Modality,
    window_start: int,
    window_end: int,
    cfg,
) -> ModalityPrediction:
    """Aggregate exactly ``cfg.window_len`` per-frame results into one vote."""
    if len(results) < cfg.window_len:
        raise ShortWindow(
            f"need {cfg.window_len} frame results, got {len(results)}"
        )
    if len(results) > cfg.window_len:
        raise ValueError(
            f"expected exactly {cfg.window_len} frame results, got {len(results)}"
        )
    counts = Counter(emotion for emotion, _ in results)
    (top, top_count), = counts.most_common(1)
    tied = sum(1 for c in counts.values() if c == top_count) > 1
    if tied or top_count < cfg.frame_majority:
        return ModalityPrediction(modality, window_start, window_end, Emotion.NEUTRAL)
    rule = None
    if top != Emotion.NEUTRAL:
        rule_counts = Counter(
            r for emotion, r in results if emotion == top and r is not None
        )
        # Most common rule among the majority frames; ties to the lowest id.
        rule = min(
            rule_counts, key=lambda r: (-rule_counts[r], r)
        )
    return ModalityPrediction(modality, window_start, window_end, top, rule)


def windows_for_stream(
    timestamps: Sequence[int],
    results: Sequence[tuple[Emotion, Optional[str]]],
    modality: Modality,
    cfg,
) -> list[ModalityPrediction]:
    """Tile a whole frame stream into window predictions (tail dropped)."""
    if len(timestamps) != len(results):
        raise ValueError("timestamps and results must have equal length")
    predictions = []
    n_windows = len(results) // cfg.window_len
    for w in range(n_windows):
        lo = w * cfg.window_len
        hi = lo + cfg.window_len
        predictions.append(
            classify_window(
                results[lo:hi], modality, timestamps[lo], timestamps[hi - 1], cfg
            )
        )
    return predictions


def windows_from_results(
    timestamps: Sequence[int],
    results: Sequence[tuple[Emotion, Optional[str]]],
    modality: Modality,
    cfg,
) -> list[ModalityPrediction]:
    """Kernel-accelerated equivalent of windows_for_stream.

    Majority counting runs in the kernel backend; the fired-rule lookup for
    the few non-neutral windows stays in Python.
    """
    if len(timestamps) != len(results):
        raise ValueError("timestamps and results must have equal length")
    n_windows = len(results) // cfg.window_len
    if n_windows == 0:
        return []
    ids = np.fromiter(
        (EMOTION_IDS[emotion] for emotion, _ in results),
        dtype=np.uint8,
        count=len(results),
    )
    win_ids = kernels.window_majority(
        ids, cfg.window_len, cfg.frame_majority, NEUTRAL_ID
    )
    predictions = []
    for w in range(n_windows):
        lo = w * cfg.window_len
        hi = lo + cfg.window_len
        emotion = EMOTIONS[int(win_ids[w])]
        rule = None
        if emotion != Emotion.NEUTRAL:
            rule_counts = Counter(
                r
                for frame_emotion, r in results[lo:hi]
                if frame_emotion == emotion and r is not None
            )
            rule = min(rule_counts, key=lambda r: (-rule_counts[r], r))
        predictions.append(
            ModalityPrediction(modality, timestamps[lo], timestamps[hi - 1], emotion, rule)
        )
    return predictions
