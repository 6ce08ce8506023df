"""Trace types, file formats, and the synthetic workday simulator."""

from .files import (
    FACE_FILE,
    GAZE_FILE,
    KEYSTROKES_FILE,
    SESSION_FILE,
    SKELETON_FILE,
    SPEECH_FILE,
    TRACE_FILES,
    load_trace,
    normalize_session_events,
    write_trace,
)
from .simulate import FRAME_PERIOD_MS, GAZE_PERIOD_MS, SIM_DATE, Persona, simulate_workday
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

__all__ = [
    "FACE_FILE",
    "GAZE_FILE",
    "KEYSTROKES_FILE",
    "SESSION_FILE",
    "SKELETON_FILE",
    "SPEECH_FILE",
    "TRACE_FILES",
    "load_trace",
    "normalize_session_events",
    "write_trace",
    "FRAME_PERIOD_MS",
    "GAZE_PERIOD_MS",
    "SIM_DATE",
    "Persona",
    "simulate_workday",
    "FaceFrame",
    "GazeSample",
    "KeyClass",
    "KeystrokeEvent",
    "SessionEvent",
    "SessionKind",
    "SkeletonFrame",
    "SpeechToken",
    "WorkdayTrace",
]
