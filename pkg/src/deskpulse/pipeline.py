"""End-to-end analysis of one workday trace.

Runs the per-modality classifiers, aligns speech tokens onto the frame
windows, fuses votes per window, and computes activity statistics and gaze
telemetry. Pure and deterministic: identical inputs give identical results.

Window alignment: posture windows define the canonical timeline when
skeleton frames exist, otherwise face windows do. A face window joins a
canonical window only on exact (start, end) match; in recorded and
simulated traces both streams come from the same sensor clock, so they
match frame for frame. Each speech token votes in the window containing
its timestamp; several tokens in one window reduce to their plurality
emotion (ties fall back to Neutral). Windows with no token simply have
one fewer voter.
"""

from __future__ import annotations

import bisect
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .activity import InterruptionReport, KeystrokeReport, interruption_stats, keystroke_stats
from .classify.frame_rules import face_rules_batch, posture_rules_batch
from .classify.gaze import AbsenceInterval, DwellEvent, detect_absences, detect_dwells
from .classify.speech import EmotionDictionary, classify_speech, default_dictionary
from .classify.windows import ModalityPrediction, windows_from_results
from .fusion import FusedPrediction, SessionSummary, fuse, summarize_session
from .ingest.trace import WorkdayTrace
from .model import Emotion, Modality, RuleConfig

#: Monitored sessions per workday (matches the two daily questionnaires).
SESSIONS_PER_DAY = 2


@dataclass(frozen=True)
class AnalysisResult:
    posture_windows: tuple[ModalityPrediction, ...]
    face_windows: tuple[ModalityPrediction, ...]
    speech_predictions: tuple[ModalityPrediction, ...]
    fused: tuple[FusedPrediction, ...]
    day_summary: SessionSummary
    sessions: tuple[SessionSummary, ...]
    keystrokes: KeystrokeReport
    interruptions: InterruptionReport
    dwells: tuple[DwellEvent, ...]
    absences: tuple[AbsenceInterval, ...]

    @property
    def dwell_count(self) -> int:
        return len(self.dwells)

    @property
    def absence_total_seconds(self) -> float:
        return sum(a.duration_ms for a in self.absences) / 1000.0


def _speech_window_vote(
    predictions: Sequence[ModalityPrediction], window: tuple[int, int]
) -> Optional[ModalityPrediction]:
    """Reduce the window's token predictions to one speech vote."""
    if not predictions:
        return None
    counts = Counter(p.emotion for p in predictions)
    (top, top_count), = counts.most_common(1)
    if sum(1 for c in counts.values() if c == top_count) > 1:
        top = Emotion.NEUTRAL
    rule = "dictionary" if top != Emotion.NEUTRAL else None
    return ModalityPrediction(Modality.SPEECH, window[0], window[1], top, rule)


def analyze_trace(
    trace: WorkdayTrace,
    cfg: RuleConfig | None = None,
    dictionary: EmotionDictionary | None = None,
) -> AnalysisResult:
    cfg = cfg or RuleConfig()
    dictionary = dictionary or default_dictionary()

    posture_results = posture_rules_batch(trace.skeleton, cfg)
    posture_windows = windows_from_results(
        [f.ts for f in trace.skeleton], posture_results, Modality.POSTURE, cfg
    )
    face_results = face_rules_batch(trace.face, cfg)
    face_windows = windows_from_results(
        [f.ts for f in trace.face], face_results, Modality.FACE, cfg
    )
    speech_predictions = tuple(classify_speech(t, dictionary) for t in trace.speech)

    canonical = posture_windows if posture_windows else face_windows
    face_by_window = {(w.window_start, w.window_end): w for w in face_windows}

    fused: list[FusedPrediction] = []
    if canonical:
        starts = [w.window_start for w in canonical]
        token_votes: dict[int, list[ModalityPrediction]] = {}
        for pred in speech_predictions:
            idx = bisect.bisect_right(starts, pred.window_start) - 1
            if idx >= 0 and pred.window_start <= canonical[idx].window_end:
                token_votes.setdefault(idx, []).append(pred)
        for idx, window in enumerate(canonical):
            key = (window.window_start, window.window_end)
            votes = [window]
            if canonical is not face_windows:
                face_vote = face_by_window.get(key)
                if face_vote is not None:
                    votes.append(face_vote)
            speech_vote = _speech_window_vote(token_votes.get(idx, ()), key)
            if speech_vote is not None:
                votes.append(speech_vote)
            fused.append(fuse(votes, cfg.tie_order))

    day_summary = summarize_session(fused)
    half = cfg.workday_ms // SESSIONS_PER_DAY
    sessions = tuple(
        summarize_session([f for f in fused if lo <= f.window_start < hi])
        for lo, hi in ((0, half), (half, cfg.workday_ms + 1))
    )

    return AnalysisResult(
        posture_windows=tuple(posture_windows),
        face_windows=tuple(face_windows),
        speech_predictions=speech_predictions,
        fused=tuple(fused),
        day_summary=day_summary,
        sessions=sessions,
        keystrokes=keystroke_stats(trace.keystrokes, cfg),
        interruptions=interruption_stats(trace.session_events, cfg),
        dwells=tuple(detect_dwells(trace.gaze, cfg)),
        absences=tuple(detect_absences(trace.gaze)),
    )
