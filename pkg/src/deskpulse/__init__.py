"""deskpulse: affect monitoring for desk work.

Replays or simulates multimodal workplace sensor streams, classifies the
user's emotional and physical state with geometric/lexical rules fused by
majority vote, collects self-reported feedback, and drives health-booster
tools through an HTTP service and CLI.
"""

from .model import Emotion, FacePoint, Joint, Modality, Point2, RuleConfig, face_width

__version__ = "0.1.0"

__all__ = [
    "Emotion",
    "FacePoint",
    "Joint",
    "Modality",
    "Point2",
    "RuleConfig",
    "face_width",
    "__version__",
]
