"""Rule-based affect classification over the sensor modalities."""

from .frame_rules import (
    RULE_EMOTIONS,
    face_rule_frame,
    face_rules_batch,
    posture_rule_frame,
    posture_rules_batch,
)
from .gaze import AbsenceInterval, DwellEvent, detect_absences, detect_dwells
from .speech import (
    EmotionDictionary,
    classify_speech,
    default_dictionary,
    load_dictionary,
    parse_dictionary,
)
from .windows import (
    ModalityPrediction,
    classify_window,
    windows_for_stream,
    windows_from_results,
)

__all__ = [
    "RULE_EMOTIONS",
    "face_rule_frame",
    "face_rules_batch",
    "posture_rule_frame",
    "posture_rules_batch",
    "AbsenceInterval",
    "DwellEvent",
    "detect_absences",
    "detect_dwells",
    "EmotionDictionary",
    "classify_speech",
    "default_dictionary",
    "load_dictionary",
    "parse_dictionary",
    "ModalityPrediction",
    "classify_window",
    "windows_for_stream",
    "windows_from_results",
]
