"""Event and frame types for the six sensor streams, plus the workday trace.

Everything is an immutable value validated at construction, so a loaded or
simulated trace can be shared freely between threads.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Sequence

from ..errors import DegenerateFrame, OrderError, ValidationError
from ..model import FACE_POINTS, JOINTS, FacePoint, Joint, Point2


class KeyClass(str, Enum):
    CHARACTER = "character"
    NAVIGATION = "navigation"
    FUNCTION_CONTROL = "function_control"


class SessionKind(str, Enum):
    LOCKED = "Locked"
    UNLOCKED = "Unlocked"


_INF = math.inf


def _check_ts(ts) -> int:
    if not isinstance(ts, int) or isinstance(ts, bool) or ts < 0:
        raise ValidationError(f"timestamp must be a non-negative integer, got {ts!r}")
    return ts


def _check_points(kind: str, expected, given) -> dict:
    pts = {}
    for name in expected:
        p = given.get(name)
        if p is None:
            raise ValidationError(f"{kind} frame missing point {name.value}")
        x, y = p
        if not (-_INF < x < _INF and -_INF < y < _INF):
            raise ValidationError(
                f"{name.value} has non-finite coordinates ({x!r}, {y!r})"
            )
        pts[name] = p if type(p) is Point2 else Point2(float(x), float(y))
    if len(given) != len(expected):
        extra = set(given) - set(expected)
        raise ValidationError(f"{kind} frame has unexpected points: {extra}")
    return pts


@dataclass(frozen=True)
class SkeletonFrame:
    ts: int
    joints: Mapping[Joint, Point2]

    def __post_init__(self):
        _check_ts(self.ts)
        object.__setattr__(self, "joints", _check_points("skeleton", JOINTS, self.joints))


@dataclass(frozen=True)
class FaceFrame:
    ts: int
    points: Mapping[FacePoint, Point2]

    def __post_init__(self):
        _check_ts(self.ts)
        pts = _check_points("face", FACE_POINTS, self.points)
        if pts[FacePoint.CHEEK_LEFT] == pts[FacePoint.CHEEK_RIGHT]:
            raise DegenerateFrame("face frame has zero cheek-to-cheek width")
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class GazeSample:
    ts: int
    available: bool
    x: Optional[float] = None
    y: Optional[float] = None

    def __post_init__(self):
        _check_ts(self.ts)
        if self.available:
            if self.x is None or self.y is None:
                raise ValidationError("available gaze sample must carry x and y")
            if not (0.0 <= self.x <= 1.0 and 0.0 <= self.y <= 1.0):
                raise ValidationError(
                    f"gaze coordinates must be normalized to [0,1], got ({self.x}, {self.y})"
                )
        elif self.x is not None or self.y is not None:
            raise ValidationError("unavailable gaze sample must not carry coordinates")


@dataclass(frozen=True)
class KeystrokeEvent:
    ts: int
    key_class: KeyClass
    word_completed: Optional[str] = None

    def __post_init__(self):
        _check_ts(self.ts)
        if not isinstance(self.key_class, KeyClass):
            object.__setattr__(self, "key_class", KeyClass(self.key_class))
        if self.word_completed == "":
            object.__setattr__(self, "word_completed", None)
        if self.word_completed is not None and any(
            c in self.word_completed for c in "\n\r"
        ):
            raise ValidationError("word_completed must not contain line breaks")


@dataclass(frozen=True)
class SessionEvent:
    ts: int
    kind: SessionKind

    def __post_init__(self):
        _check_ts(self.ts)
        if not isinstance(self.kind, SessionKind):
            object.__setattr__(self, "kind", SessionKind(self.kind))


@dataclass(frozen=True)
class SpeechToken:
    ts: int
    text: str

    def __post_init__(self):
        _check_ts(self.ts)
        text = self.text.strip().lower()
        if not text:
            raise ValidationError("speech token text must be non-empty")
        if any(c in text for c in "\n\r"):
            raise ValidationError("speech token text must not contain line breaks")
        object.__setattr__(self, "text", text)


def _check_ordered(name: str, events: Sequence) -> tuple:
    events = tuple(events)
    for prev, cur in zip(events, events[1:]):
        if cur.ts < prev.ts:
            raise OrderError(
                f"{name} stream timestamps regress: {prev.ts} then {cur.ts}"
            )
    return events


@dataclass(frozen=True)
class WorkdayTrace:
    """One user's six per-modality streams for a single monitored day."""

    user_id: str = "user"
    date: dt.date = dt.date(2024, 3, 4)
    keystrokes: tuple[KeystrokeEvent, ...] = field(default_factory=tuple)
    session_events: tuple[SessionEvent, ...] = field(default_factory=tuple)
    speech: tuple[SpeechToken, ...] = field(default_factory=tuple)
    gaze: tuple[GazeSample, ...] = field(default_factory=tuple)
    skeleton: tuple[SkeletonFrame, ...] = field(default_factory=tuple)
    face: tuple[FaceFrame, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "keystrokes", _check_ordered("keystroke", self.keystrokes))
        object.__setattr__(
            self, "session_events", _check_ordered("session", self.session_events)
        )
        object.__setattr__(self, "speech", _check_ordered("speech", self.speech))
        object.__setattr__(self, "gaze", _check_ordered("gaze", self.gaze))
        object.__setattr__(self, "skeleton", _check_ordered("skeleton", self.skeleton))
        object.__setattr__(self, "face", _check_ordered("face", self.face))

    @property
    def last_ts(self) -> int:
        last = 0
        for stream in (
            self.keystrokes,
            self.session_events,
            self.speech,
            self.gaze,
            self.skeleton,
            self.face,
        ):
            if stream:
                last = max(last, stream[-1].ts)
        return last

    def is_empty(self) -> bool:
        return not any(
            (
                self.keystrokes,
                self.session_events,
                self.speech,
                self.gaze,
                self.skeleton,
                self.face,
            )
        )
