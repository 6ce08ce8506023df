"""Shared domain vocabulary: emotions, geometry, joints, face points, config.

Coordinates are 2D (x rightward, y upward, meters at the sensor plane).
Timestamps are integer milliseconds since the start of the monitored
workday. All types here are immutable values and safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Mapping, NamedTuple

from .errors import ConfigError, DegenerateFrame


class Emotion(str, Enum):
    HAPPY = "Happy"
    SAD = "Sad"
    SURPRISE = "Surprise"
    ANGER = "Anger"
    FEAR = "Fear"
    DISGUST = "Disgust"
    NEUTRAL = "Neutral"


#: Canonical ordering; index doubles as the integer id used by the kernels.
EMOTIONS = tuple(Emotion)
EMOTION_IDS = {e: i for i, e in enumerate(EMOTIONS)}
NEUTRAL_ID = EMOTION_IDS[Emotion.NEUTRAL]


class Modality(str, Enum):
    """Channels that may cast a vote in fusion. Gaze never votes."""

    POSTURE = "Posture"
    FACE = "Face"
    SPEECH = "Speech"


class Joint(str, Enum):
    HEAD = "Head"
    SHOULDER_CENTER = "ShoulderCenter"
    SHOULDER_LEFT = "ShoulderLeft"
    SHOULDER_RIGHT = "ShoulderRight"
    SPINE = "Spine"
    HIP_CENTER = "HipCenter"
    HIP_LEFT = "HipLeft"
    HIP_RIGHT = "HipRight"
    ELBOW_LEFT = "ElbowLeft"
    ELBOW_RIGHT = "ElbowRight"
    WRIST_LEFT = "WristLeft"
    WRIST_RIGHT = "WristRight"


JOINTS = tuple(Joint)
JOINT_IDS = {j: i for i, j in enumerate(JOINTS)}


class FacePoint(str, Enum):
    BROW_LEFT = "BrowLeft"
    BROW_RIGHT = "BrowRight"
    UPPER_LIP_LEFT = "UpperLipLeft"
    UPPER_LIP_TOP = "UpperLipTop"
    UPPER_LIP_RIGHT = "UpperLipRight"
    LOWER_LIP_LEFT = "LowerLipLeft"
    LOWER_LIP_BOTTOM = "LowerLipBottom"
    LOWER_LIP_RIGHT = "LowerLipRight"
    EYELID_UPPER_LEFT = "EyelidUpperLeft"
    EYELID_LOWER_LEFT = "EyelidLowerLeft"
    EYELID_UPPER_RIGHT = "EyelidUpperRight"
    EYELID_LOWER_RIGHT = "EyelidLowerRight"
    CHEEK_LEFT = "CheekLeft"
    CHEEK_RIGHT = "CheekRight"
    CHIN_BOTTOM = "ChinBottom"
    FOREHEAD_LEFT = "ForeheadLeft"
    FOREHEAD_TOP = "ForeheadTop"
    FOREHEAD_RIGHT = "ForeheadRight"


FACE_POINTS = tuple(FacePoint)
FACE_POINT_IDS = {p: i for i, p in enumerate(FACE_POINTS)}


class Point2(NamedTuple):
    x: float
    y: float


DEFAULT_TIE_ORDER = (Modality.FACE, Modality.SPEECH, Modality.POSTURE)

_INT_FIELDS = frozenset(
    {"window_len", "frame_majority", "keystroke_threshold", "break_threshold"}
)


@dataclass(frozen=True)
class RuleConfig:
    """Tunable thresholds for classification, analytics, and reporting.

    Face thresholds (``t_lip``, ``t_eye``, ``d_cheek``) are fractions of the
    cheek-to-cheek face width, which makes the face rules invariant to how
    far the user sits from the sensor. Posture thresholds are meters.
    """

    window_len: int = 10
    frame_majority: int = 6
    t_lip: float = 0.45
    t_eye: float = 0.04
    d_cheek: float = 0.25
    r_head: float = 0.15
    w_front: float = 0.25
    tilt_thresh: float = 0.08
    dwell_seconds: float = 5.0
    dwell_radius: float = 0.05
    keystroke_threshold: int = 6000
    break_threshold: int = 10
    typing_gap_seconds: float = 60.0
    workday_hours: float = 8.0
    tie_order: tuple[Modality, ...] = DEFAULT_TIE_ORDER

    def __post_init__(self):
        for f in fields(self):
            if f.name == "tie_order":
                continue
            value = getattr(self, f.name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{f.name} must be a number, got {value!r}")
            if not math.isfinite(value) or value <= 0:
                raise ConfigError(f"{f.name} must be strictly positive, got {value!r}")
        if self.frame_majority > self.window_len:
            raise ConfigError(
                f"frame_majority ({self.frame_majority}) must not exceed "
                f"window_len ({self.window_len})"
            )
        if tuple(sorted(m.value for m in self.tie_order)) != ("Face", "Posture", "Speech"):
            raise ConfigError(
                f"tie_order must be a permutation of Face/Speech/Posture, got {self.tie_order!r}"
            )

    @property
    def workday_ms(self) -> int:
        return int(round(self.workday_hours * 3_600_000))

    @property
    def dwell_ms(self) -> float:
        return self.dwell_seconds * 1000.0

    @property
    def typing_gap_ms(self) -> float:
        return self.typing_gap_seconds * 1000.0


def parse_config(text: str, path=None) -> RuleConfig:
    """Parse the ``key=value`` config format into a RuleConfig.

    One field per line, ``#`` starts a comment, blank lines ignored.
    Unknown keys and non-positive values are rejected.
    """
    known = {f.name: f for f in fields(RuleConfig)}
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{_loc(path, lineno)}expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise ConfigError(f"{_loc(path, lineno)}unknown config key {key!r}")
        if key in overrides:
            raise ConfigError(f"{_loc(path, lineno)}duplicate config key {key!r}")
        if key == "tie_order":
            try:
                overrides[key] = tuple(
                    Modality(part.strip().capitalize()) for part in value.split(",")
                )
            except ValueError:
                raise ConfigError(
                    f"{_loc(path, lineno)}tie_order must list Face/Speech/Posture"
                ) from None
        elif key in _INT_FIELDS:
            try:
                overrides[key] = int(value)
            except ValueError:
                raise ConfigError(
                    f"{_loc(path, lineno)}{key} must be an integer, got {value!r}"
                ) from None
        else:
            try:
                overrides[key] = float(value)
            except ValueError:
                raise ConfigError(
                    f"{_loc(path, lineno)}{key} must be a number, got {value!r}"
                ) from None
    return replace(RuleConfig(), **overrides)


def load_config(path) -> RuleConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), path=path)


def _loc(path, lineno):
    return f"{path}:{lineno}: " if path is not None else f"line {lineno}: "


def face_width(frame) -> float:
    """Euclidean cheek-to-cheek distance; the scale normalizer for face rules.

    Accepts a FaceFrame or a bare FacePoint->Point2 mapping.
    """
    points: Mapping[FacePoint, Point2] = getattr(frame, "points", frame)
    left = points[FacePoint.CHEEK_LEFT]
    right = points[FacePoint.CHEEK_RIGHT]
    width = math.hypot(left[0] - right[0], left[1] - right[1])
    if width == 0.0:
        raise DegenerateFrame("cheek points coincide: face width is zero")
    return width
