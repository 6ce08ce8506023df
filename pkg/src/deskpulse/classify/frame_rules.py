"""Geometric emotion rules evaluated on single skeleton/face frames.

Five rules, fixed priority (not configurable, so behavior stays auditable):

* posture 1 (Sad):   both wrists held close to the head, elbows above shoulders
* posture 3 (Sad):   both wrists below the elbows with the head tilted sideways
* posture 2 (Happy): hands working in front of the spine between elbow and shoulder
* face 4 (Anger):    near-closed eyelids with the cheek drawn up to the eye
* face 5 (Happy):    lip corners spread wider than a fraction of the face width

Posture priority 1 > 3 > 2; face 4 > 5. Negative-state rules win ties so
distress is never masked. The single-frame functions here are the readable
reference; the *_batch functions run the same predicates through the kernel
backend for whole streams.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from .. import kernels
from ..errors import DegenerateFrame
from ..model import (
    EMOTIONS,
    FACE_POINTS,
    JOINTS,
    Emotion,
    FacePoint,
    Joint,
    RuleConfig,
    face_width,
)
from ..ingest.trace import FaceFrame, SkeletonFrame

#: rule id -> emotion implied when the rule fires
RULE_EMOTIONS = {
    "1": Emotion.SAD,
    "2": Emotion.HAPPY,
    "3": Emotion.SAD,
    "4": Emotion.ANGER,
    "5": Emotion.HAPPY,
}

_CODE_TO_RULE = {1: "1", 2: "2", 3: "3", 4: "4", 5: "5"}


def _dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def posture_rule_frame(
    frame: SkeletonFrame, cfg: RuleConfig
) -> tuple[Emotion, Optional[str]]:
    """Classify one skeleton frame; returns (emotion, fired rule id or None)."""
    j = frame.joints
    head = j[Joint.HEAD]
    wrist_l, wrist_r = j[Joint.WRIST_LEFT], j[Joint.WRIST_RIGHT]
    elbow_l, elbow_r = j[Joint.ELBOW_LEFT], j[Joint.ELBOW_RIGHT]
    shoulder_l, shoulder_r = j[Joint.SHOULDER_LEFT], j[Joint.SHOULDER_RIGHT]

    if (
        _dist(wrist_l, head) <= cfg.r_head
        and _dist(wrist_r, head) <= cfg.r_head
        and elbow_l.y > shoulder_l.y
        and elbow_r.y > shoulder_r.y
    ):
        return Emotion.SAD, "1"
    if (
        wrist_l.y < elbow_l.y
        and wrist_r.y < elbow_r.y
        and abs(head.x - j[Joint.SHOULDER_CENTER].x) > cfg.tilt_thresh
    ):
        return Emotion.SAD, "3"
    spine_x = j[Joint.SPINE].x
    if (
        elbow_l.y < wrist_l.y < shoulder_l.y
        and elbow_r.y < wrist_r.y < shoulder_r.y
        and abs(wrist_l.x - spine_x) <= cfg.w_front
        and abs(wrist_r.x - spine_x) <= cfg.w_front
    ):
        return Emotion.HAPPY, "2"
    return Emotion.NEUTRAL, None


def face_rule_frame(frame: FaceFrame, cfg: RuleConfig) -> tuple[Emotion, Optional[str]]:
    """Classify one face frame; thresholds scale with the face width."""
    p = frame.points
    width = face_width(frame)
    eye_gap = cfg.t_eye * width
    cheek_gap = cfg.d_cheek * width
    left = (
        abs(p[FacePoint.EYELID_UPPER_LEFT].y - p[FacePoint.EYELID_LOWER_LEFT].y) < eye_gap
        and _dist(p[FacePoint.CHEEK_LEFT], p[FacePoint.EYELID_LOWER_LEFT]) < cheek_gap
    )
    right = (
        abs(p[FacePoint.EYELID_UPPER_RIGHT].y - p[FacePoint.EYELID_LOWER_RIGHT].y) < eye_gap
        and _dist(p[FacePoint.CHEEK_RIGHT], p[FacePoint.EYELID_LOWER_RIGHT]) < cheek_gap
    )
    if left or right:
        return Emotion.ANGER, "4"
    span = max(
        abs(p[FacePoint.UPPER_LIP_LEFT].x - p[FacePoint.UPPER_LIP_RIGHT].x),
        abs(p[FacePoint.LOWER_LIP_LEFT].x - p[FacePoint.LOWER_LIP_RIGHT].x),
    )
    if span > cfg.t_lip * width:
        return Emotion.HAPPY, "5"
    return Emotion.NEUTRAL, None


def skeleton_array(frames: Sequence[SkeletonFrame]) -> np.ndarray:
    """Pack frames into the (n, 12, 2) kernel layout."""
    out = np.empty((len(frames), len(JOINTS), 2), dtype=np.float64)
    for i, frame in enumerate(frames):
        for k, joint in enumerate(JOINTS):
            out[i, k, 0], out[i, k, 1] = frame.joints[joint]
    return out


def face_array(frames: Sequence[FaceFrame]) -> np.ndarray:
    """Pack frames into the (n, 18, 2) kernel layout."""
    out = np.empty((len(frames), len(FACE_POINTS), 2), dtype=np.float64)
    for i, frame in enumerate(frames):
        for k, point in enumerate(FACE_POINTS):
            out[i, k, 0], out[i, k, 1] = frame.points[point]
    return out


def _codes_to_results(codes: np.ndarray):
    results = []
    for code in codes:
        code = int(code)
        if code == kernels.DEGENERATE:
            raise DegenerateFrame("zero face width in batch frame")
        rule = _CODE_TO_RULE.get(code)
        emotion = RULE_EMOTIONS[rule] if rule else Emotion.NEUTRAL
        results.append((emotion, rule))
    return results


def posture_rules_batch(frames: Sequence[SkeletonFrame], cfg: RuleConfig):
    """Per-frame (emotion, rule) for a whole skeleton stream via the kernels."""
    if not frames:
        return []
    codes = kernels.posture_codes(
        skeleton_array(frames), cfg.r_head, cfg.w_front, cfg.tilt_thresh
    )
    return _codes_to_results(codes)


def face_rules_batch(frames: Sequence[FaceFrame], cfg: RuleConfig):
    """Per-frame (emotion, rule) for a whole face stream via the kernels."""
    if not frames:
        return []
    codes = kernels.face_codes(face_array(frames), cfg.t_lip, cfg.t_eye, cfg.d_cheek)
    return _codes_to_results(codes)
