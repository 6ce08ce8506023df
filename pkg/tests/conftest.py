"""Shared fixtures: hand-built frames whose geometry is derived directly
from the rule predicates (independent of the simulator's templates)."""

from __future__ import annotations

import pytest

from deskpulse.ingest.trace import FaceFrame, SkeletonFrame
from deskpulse.model import FacePoint, Joint, Point2, RuleConfig

# Neutral seated pose: wrists above elbows but too far out for the
# working-hands rule, head centered, nothing near the head.
BASE_JOINTS = {
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
    Joint.WRIST_LEFT: (-0.30, 0.30),
    Joint.WRIST_RIGHT: (0.30, 0.30),
}

# Neutral face, cheek-to-cheek width exactly 0.10.
BASE_FACE = {
    FacePoint.BROW_LEFT: (-0.030, 0.046),
    FacePoint.BROW_RIGHT: (0.030, 0.046),
    FacePoint.UPPER_LIP_LEFT: (-0.018, -0.024),
    FacePoint.UPPER_LIP_TOP: (0.0, -0.017),
    FacePoint.UPPER_LIP_RIGHT: (0.018, -0.024),
    FacePoint.LOWER_LIP_LEFT: (-0.018, -0.030),
    FacePoint.LOWER_LIP_BOTTOM: (0.0, -0.037),
    FacePoint.LOWER_LIP_RIGHT: (0.018, -0.030),
    FacePoint.EYELID_UPPER_LEFT: (-0.028, 0.031),
    FacePoint.EYELID_LOWER_LEFT: (-0.028, 0.021),
    FacePoint.EYELID_UPPER_RIGHT: (0.028, 0.031),
    FacePoint.EYELID_LOWER_RIGHT: (0.028, 0.021),
    FacePoint.CHEEK_LEFT: (-0.05, 0.0),
    FacePoint.CHEEK_RIGHT: (0.05, 0.0),
    FacePoint.CHIN_BOTTOM: (0.0, -0.064),
    FacePoint.FOREHEAD_LEFT: (-0.034, 0.071),
    FacePoint.FOREHEAD_TOP: (0.0, 0.084),
    FacePoint.FOREHEAD_RIGHT: (0.034, 0.071),
}


def make_skeleton(ts: int = 0, **overrides) -> SkeletonFrame:
    """Skeleton frame from the neutral pose; override joints by enum name."""
    joints = {j: Point2(*p) for j, p in BASE_JOINTS.items()}
    for name, xy in overrides.items():
        joints[Joint[name.upper()]] = Point2(*xy)
    return SkeletonFrame(ts, joints)


def make_face(ts: int = 0, **overrides) -> FaceFrame:
    points = {p: Point2(*xy) for p, xy in BASE_FACE.items()}
    for name, xy in overrides.items():
        points[FacePoint[name.upper()]] = Point2(*xy)
    return FaceFrame(ts, points)


# Canonical rule-firing poses, used across rule and window tests.

def sad_contemplate_frame(ts: int = 0) -> SkeletonFrame:
    """Rule 1: wrists near the head, elbows above shoulders."""
    return make_skeleton(
        ts,
        wrist_left=(-0.05, 0.60),
        wrist_right=(0.05, 0.60),
        elbow_left=(-0.28, 0.50),
        elbow_right=(0.28, 0.50),
    )


def happy_typing_frame(ts: int = 0) -> SkeletonFrame:
    """Rule 2: per side elbow < wrist < shoulder, wrists in front of spine."""
    return make_skeleton(
        ts,
        wrist_left=(-0.10, 0.30),
        wrist_right=(0.10, 0.30),
        elbow_left=(-0.24, 0.16),
        elbow_right=(0.24, 0.16),
    )


def sad_tilt_frame(ts: int = 0) -> SkeletonFrame:
    """Rule 3: wrists below elbows, head tilted off shoulder center."""
    return make_skeleton(
        ts,
        wrist_left=(-0.20, 0.08),
        wrist_right=(0.20, 0.08),
        head=(0.12, 0.53),
    )


def angry_squint_face(ts: int = 0) -> FaceFrame:
    """Rule 4 on the left eye: 0.003 lid gap, 0.02 cheek distance (W=0.10)."""
    return make_face(
        ts,
        eyelid_upper_left=(-0.038, 0.019),
        eyelid_lower_left=(-0.038, 0.016),
    )


def happy_smile_face(ts: int = 0) -> FaceFrame:
    """Rule 5: lip corner span 0.06 against threshold 0.045 (W=0.10)."""
    return make_face(
        ts,
        upper_lip_left=(-0.030, -0.022),
        upper_lip_right=(0.030, -0.022),
        lower_lip_left=(-0.030, -0.028),
        lower_lip_right=(0.030, -0.028),
    )


@pytest.fixture
def cfg() -> RuleConfig:
    return RuleConfig()
