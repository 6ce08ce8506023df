"""Synthetic workday traces with known ground truth.

Two personas: an engaged worker (heavy typing, few breaks, smiling/active
posture, upbeat speech) and a disengaged one (light typing, frequent
breaks, neutral or slumped posture, sparse gloomy speech). Generation is a
pure function of (persona, seed, cfg): the same inputs always produce a
byte-identical trace. Wall-clock densities (frame and gaze sample rates)
live here, not in RuleConfig; classification treats frames as an ordered
sequence.
"""

from __future__ import annotations

import datetime as dt
import random
from dataclasses import dataclass
from enum import Enum

from ..classify.speech import default_dictionary
from ..model import Emotion, FacePoint, Joint, Point2, RuleConfig
from .trace import (
    FaceFrame,
    GazeSample,
    KeyClass,
    KeystrokeEvent,
    SessionEvent,
    SessionKind,
    SkeletonFrame,
    SpeechToken,
    WorkdayTrace,
)

FRAME_PERIOD_MS = 2000
GAZE_PERIOD_MS = 1000

SIM_DATE = dt.date(2024, 3, 4)


class Persona(str, Enum):
    ENGAGED = "engaged"
    DISENGAGED = "disengaged"


# Posture templates (meters at the sensor plane, y up, seated user).
_POSE_TYPING = {
    Joint.HEAD: (0.0, 0.55),
    Joint.SHOULDER_CENTER: (0.0, 0.42),
    Joint.SHOULDER_LEFT: (-0.18, 0.40),
    Joint.SHOULDER_RIGHT: (0.18, 0.40),
    Joint.SPINE: (0.0, 0.18),
    Joint.HIP_CENTER: (0.0, 0.0),
    Joint.HIP_LEFT: (-0.12, 0.0),
    Joint.HIP_RIGHT: (0.12, 0.0),
    Joint.ELBOW_LEFT: (-0.24, 0.16),
    Joint.ELBOW_RIGHT: (0.24, 0.16),
    Joint.WRIST_LEFT: (-0.16, 0.24),
    Joint.WRIST_RIGHT: (0.16, 0.24),
}

_POSE_REST = dict(
    _POSE_TYPING,
    **{
        Joint.ELBOW_LEFT: (-0.22, 0.18),
        Joint.ELBOW_RIGHT: (0.22, 0.18),
        Joint.WRIST_LEFT: (-0.10, 0.10),
        Joint.WRIST_RIGHT: (0.10, 0.10),
    },
)

_POSE_HANDS_BEHIND_HEAD = dict(
    _POSE_TYPING,
    **{
        Joint.ELBOW_LEFT: (-0.30, 0.50),
        Joint.ELBOW_RIGHT: (0.30, 0.50),
        Joint.WRIST_LEFT: (-0.05, 0.58),
        Joint.WRIST_RIGHT: (0.05, 0.58),
    },
)

_POSE_SLUMPED_TILT = dict(
    _POSE_REST,
    **{
        Joint.HEAD: (0.13, 0.52),
    },
)

_POSES = {
    "typing": _POSE_TYPING,
    "rest": _POSE_REST,
    "behind_head": _POSE_HANDS_BEHIND_HEAD,
    "tilt": _POSE_SLUMPED_TILT,
}

# Face templates; thresholds scale with the 0.11 m cheek-to-cheek width.
_FACE_NEUTRAL = {
    FacePoint.BROW_LEFT: (-0.03, 0.045),
    FacePoint.BROW_RIGHT: (0.03, 0.045),
    FacePoint.UPPER_LIP_LEFT: (-0.02, -0.025),
    FacePoint.UPPER_LIP_TOP: (0.0, -0.018),
    FacePoint.UPPER_LIP_RIGHT: (0.02, -0.025),
    FacePoint.LOWER_LIP_LEFT: (-0.02, -0.030),
    FacePoint.LOWER_LIP_BOTTOM: (0.0, -0.038),
    FacePoint.LOWER_LIP_RIGHT: (0.02, -0.030),
    FacePoint.EYELID_UPPER_LEFT: (-0.03, 0.030),
    FacePoint.EYELID_LOWER_LEFT: (-0.03, 0.022),
    FacePoint.EYELID_UPPER_RIGHT: (0.03, 0.030),
    FacePoint.EYELID_LOWER_RIGHT: (0.03, 0.022),
    FacePoint.CHEEK_LEFT: (-0.055, 0.0),
    FacePoint.CHEEK_RIGHT: (0.055, 0.0),
    FacePoint.CHIN_BOTTOM: (0.0, -0.065),
    FacePoint.FOREHEAD_LEFT: (-0.035, 0.07),
    FacePoint.FOREHEAD_TOP: (0.0, 0.085),
    FacePoint.FOREHEAD_RIGHT: (0.035, 0.07),
}

_FACE_SMILE = dict(
    _FACE_NEUTRAL,
    **{
        FacePoint.UPPER_LIP_LEFT: (-0.031, -0.022),
        FacePoint.UPPER_LIP_RIGHT: (0.031, -0.022),
        FacePoint.LOWER_LIP_LEFT: (-0.031, -0.027),
        FacePoint.LOWER_LIP_RIGHT: (0.031, -0.027),
    },
)

_FACE_SQUINT = dict(
    _FACE_NEUTRAL,
    **{
        FacePoint.EYELID_UPPER_LEFT: (-0.03, 0.0215),
        FacePoint.EYELID_LOWER_LEFT: (-0.03, 0.0205),
        FacePoint.EYELID_UPPER_RIGHT: (0.03, 0.0215),
        FacePoint.EYELID_LOWER_RIGHT: (0.03, 0.0205),
        FacePoint.CHEEK_LEFT: (-0.04, 0.012),
        FacePoint.CHEEK_RIGHT: (0.04, 0.012),
    },
)

_FACES = {
    "neutral": _FACE_NEUTRAL,
    "smile": _FACE_SMILE,
    "squint": _FACE_SQUINT,
}

_NEUTRAL_WORDS = (
    "compile",
    "deploy",
    "meeting",
    "merge",
    "review",
    "rebase",
    "standup",
    "lunch",
    "coffee",
    "ticket",
    "staging",
    "database",
)

_TYPED_WORDS = (
    "the",
    "return",
    "value",
    "index",
    "config",
    "class",
    "import",
    "update",
    "result",
    "buffer",
    "stream",
    "handler",
)


@dataclass(frozen=True)
class _Profile:
    keystroke_lo: int
    keystroke_hi: int
    break_lo: int
    break_hi: int
    break_dur_s: tuple[int, int]
    burst_keys: tuple[int, int]
    inter_key_ms: tuple[int, int]
    poses: tuple[tuple[str, float], ...]
    faces: tuple[tuple[str, float], ...]
    tokens_lo: int
    tokens_hi: int
    token_mix: tuple[tuple[Emotion | None, float], ...]  # None = neutral filler


def _profile(persona: Persona, cfg: RuleConfig) -> _Profile:
    ks_thr = cfg.keystroke_threshold
    br_thr = cfg.break_threshold
    if persona == Persona.ENGAGED:
        return _Profile(
            keystroke_lo=int(ks_thr * 1.15),
            keystroke_hi=int(ks_thr * 1.60),
            break_lo=max(1, br_thr // 4),
            break_hi=max(2, br_thr // 2),
            break_dur_s=(120, 600),
            burst_keys=(120, 420),
            inter_key_ms=(140, 420),
            poses=(("typing", 0.70), ("rest", 0.26), ("behind_head", 0.02), ("tilt", 0.02)),
            faces=(("smile", 0.62), ("neutral", 0.36), ("squint", 0.02)),
            tokens_lo=140,
            tokens_hi=220,
            token_mix=(
                (Emotion.HAPPY, 0.72),
                (Emotion.SURPRISE, 0.12),
                (None, 0.16),
            ),
        )
    return _Profile(
        keystroke_lo=int(ks_thr * 0.45),
        keystroke_hi=int(ks_thr * 0.90),
        break_lo=br_thr,
        break_hi=br_thr + 4,
        break_dur_s=(90, 420),
        burst_keys=(60, 220),
        inter_key_ms=(220, 560),
        poses=(("rest", 0.50), ("tilt", 0.25), ("behind_head", 0.20), ("typing", 0.05)),
        faces=(("neutral", 0.88), ("squint", 0.07), ("smile", 0.05)),
        tokens_lo=25,
        tokens_hi=55,
        token_mix=(
            (Emotion.SAD, 0.55),
            (None, 0.45),
        ),
    )


def _weighted_choice(rng: random.Random, weighted):
    r = rng.random()
    acc = 0.0
    for value, weight in weighted:
        acc += weight
        if r < acc:
            return value
    return weighted[-1][0]


def _make_breaks(rng: random.Random, profile: _Profile, workday_ms: int):
    """Non-overlapping locked intervals inside the day, earliest first."""
    n = rng.randint(profile.break_lo, profile.break_hi)
    durations = [rng.randint(*profile.break_dur_s) * 1000 for _ in range(n)]
    total_break = sum(durations)
    # Split the remaining active time into n+1 gaps, each at least 2 min.
    free = workday_ms - total_break
    min_gap = 120_000
    weights = [rng.random() + 0.15 for _ in range(n + 1)]
    wsum = sum(weights)
    spare = free - min_gap * (n + 1)
    if spare < 0:
        raise ValueError("breaks do not fit in the workday")
    gaps = [min_gap + int(spare * w / wsum) for w in weights]
    breaks = []
    cursor = 0
    for i in range(n):
        cursor += gaps[i]
        start = cursor
        cursor += durations[i]
        breaks.append((start, cursor))
    return breaks


def _active_spans(breaks, workday_ms: int):
    spans = []
    cursor = 0
    for start, end in breaks:
        if start > cursor:
            spans.append((cursor, start))
        cursor = end
    if cursor < workday_ms:
        spans.append((cursor, workday_ms))
    return spans


class _ActiveClock:
    """Maps a cumulative active-time offset to a wall-clock timestamp."""

    def __init__(self, spans):
        self.spans = spans
        self.total = sum(end - start for start, end in spans)

    def to_wall(self, offset: int) -> int:
        for start, end in self.spans:
            length = end - start
            if offset < length:
                return start + offset
            offset -= length
        return self.spans[-1][1] - 1 if self.spans else 0


def _make_keystrokes(rng, profile, clock: _ActiveClock):
    total = rng.randint(profile.keystroke_lo, profile.keystroke_hi)
    bursts = []
    remaining = total
    while remaining > 0:
        size = min(remaining, rng.randint(*profile.burst_keys))
        bursts.append(size)
        remaining -= size
    gaps_between = [rng.random() + 0.1 for _ in range(len(bursts) + 1)]

    typing_ms = 0
    burst_gaps = []
    for size in bursts:
        gaps = [rng.randint(*profile.inter_key_ms) for _ in range(size - 1)]
        burst_gaps.append(gaps)
        typing_ms += sum(gaps)
    idle_total = max(0, clock.total - typing_ms - 60_000)
    wsum = sum(gaps_between)
    idle = [int(idle_total * w / wsum) for w in gaps_between]

    events = []
    offset = 0
    for b, size in enumerate(bursts):
        offset += idle[b]
        chars_since_word = 0
        for k in range(size):
            if k > 0:
                offset += burst_gaps[b][k - 1]
            roll = rng.random()
            if roll < 0.82:
                key_class = KeyClass.CHARACTER
            elif roll < 0.95:
                key_class = KeyClass.NAVIGATION
            else:
                key_class = KeyClass.FUNCTION_CONTROL
            word = None
            if key_class == KeyClass.CHARACTER:
                chars_since_word += 1
            elif key_class == KeyClass.NAVIGATION and chars_since_word >= 1:
                word = rng.choice(_TYPED_WORDS)
                chars_since_word = 0
            else:
                chars_since_word = 0
            events.append(KeystrokeEvent(clock.to_wall(offset), key_class, word))
    return events


def _make_speech(rng, profile, clock: _ActiveClock, dictionary):
    n = rng.randint(profile.tokens_lo, profile.tokens_hi)
    word_pools = {
        emotion: sorted(dictionary.words_for(emotion))
        for emotion, _ in profile.token_mix
        if emotion is not None
    }
    offsets = sorted(rng.randrange(clock.total) for _ in range(n))
    tokens = []
    for offset in offsets:
        emotion = _weighted_choice(rng, profile.token_mix)
        if emotion is None:
            text = rng.choice(_NEUTRAL_WORDS)
        else:
            text = rng.choice(word_pools[emotion])
        tokens.append(SpeechToken(clock.to_wall(offset), text))
    return tokens


def _shift_points(rng, template_items, scale):
    """Rigid whole-template translation; rule predicates are unaffected."""
    dx = round(rng.uniform(-scale, scale), 4)
    dy = round(rng.uniform(-scale, scale), 4)
    return {
        name: Point2(round(x + dx, 4), round(y + dy, 4))
        for name, x, y in template_items
    }


def _make_frames(rng, profile, spans):
    """Skeleton and face frames over the active spans, regime-driven."""
    poses = {
        name: tuple((j, x, y) for j, (x, y) in template.items())
        for name, template in _POSES.items()
    }
    faces = {
        name: tuple((p, x, y) for p, (x, y) in template.items())
        for name, template in _FACES.items()
    }
    skeleton = []
    face = []
    pose = _weighted_choice(rng, profile.poses)
    face_kind = _weighted_choice(rng, profile.faces)
    pose_left = rng.randint(15, 60)
    face_left = rng.randint(15, 60)
    for start, end in spans:
        ts = ((start + FRAME_PERIOD_MS - 1) // FRAME_PERIOD_MS) * FRAME_PERIOD_MS
        while ts < end:
            if pose_left == 0:
                pose = _weighted_choice(rng, profile.poses)
                pose_left = rng.randint(15, 60)
            if face_left == 0:
                face_kind = _weighted_choice(rng, profile.faces)
                face_left = rng.randint(15, 60)
            skeleton.append(SkeletonFrame(ts, _shift_points(rng, poses[pose], 0.02)))
            face.append(FaceFrame(ts, _shift_points(rng, faces[face_kind], 0.006)))
            pose_left -= 1
            face_left -= 1
            ts += FRAME_PERIOD_MS
    return skeleton, face


def _make_gaze(rng, breaks, workday_ms):
    samples = []
    cluster_center = (rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85))
    cluster_left = rng.randint(8, 55)
    scatter_left = 0
    break_idx = 0
    ts = 0
    while ts < workday_ms:
        while break_idx < len(breaks) and ts >= breaks[break_idx][1]:
            break_idx += 1
        in_break = break_idx < len(breaks) and breaks[break_idx][0] <= ts < breaks[break_idx][1]
        if in_break or rng.random() < 0.015:
            samples.append(GazeSample(ts, False))
        else:
            if scatter_left > 0:
                scatter_left -= 1
                x = rng.uniform(0.0, 1.0)
                y = rng.uniform(0.0, 1.0)
            else:
                if cluster_left == 0:
                    if rng.random() < 0.25:
                        scatter_left = rng.randint(3, 8)
                    cluster_center = (rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85))
                    cluster_left = rng.randint(8, 55)
                cluster_left -= 1
                x = min(1.0, max(0.0, rng.gauss(cluster_center[0], 0.008)))
                y = min(1.0, max(0.0, rng.gauss(cluster_center[1], 0.008)))
            samples.append(GazeSample(ts, True, round(x, 4), round(y, 4)))
        ts += GAZE_PERIOD_MS
    return samples


def simulate_workday(
    persona: Persona,
    seed: int,
    cfg: RuleConfig | None = None,
    user_id: str | None = None,
    date: dt.date = SIM_DATE,
) -> WorkdayTrace:
    """Deterministic synthetic trace for one persona and seed."""
    cfg = cfg or RuleConfig()
    persona = Persona(persona)
    rng = random.Random(f"{persona.value}:{seed}")
    profile = _profile(persona, cfg)
    workday_ms = cfg.workday_ms

    breaks = _make_breaks(rng, profile, workday_ms)
    spans = _active_spans(breaks, workday_ms)
    clock = _ActiveClock(spans)

    session_events = []
    for start, end in breaks:
        session_events.append(SessionEvent(start, SessionKind.LOCKED))
        session_events.append(SessionEvent(end, SessionKind.UNLOCKED))

    keystrokes = _make_keystrokes(rng, profile, clock)
    speech = _make_speech(rng, profile, clock, default_dictionary())
    skeleton, face = _make_frames(rng, profile, spans)
    gaze = _make_gaze(rng, breaks, workday_ms)

    return WorkdayTrace(
        user_id=user_id or f"sim-{persona.value}",
        date=date,
        keystrokes=tuple(keystrokes),
        session_events=tuple(session_events),
        speech=tuple(speech),
        gaze=tuple(gaze),
        skeleton=tuple(skeleton),
        face=tuple(face),
    )
