"""Self-report questionnaires: the twice-daily state form and the
end-of-day system evaluation form.

Question texts are fixed; answer options for the choice questions live in
``data/state_options.json`` so deployments can localize them. The emotion
multi-choice always offers exactly the seven emotion labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Mapping

from ..errors import ValidationError
from ..model import Emotion

STATE_QUESTIONS = (
    ("age_group", "What is your age group?", "choice"),
    ("years_at_job", "How many years have you worked at this job?", "choice"),
    (
        "mental_health_rating",
        "How would you rate your overall mental or emotional health at work?",
        "choice",
    ),
    ("unhappiness_reasons", "What are the reasons for unhappiness at work?", "multi"),
    ("satisfaction_reasons", "What are the reasons for job satisfaction at work?", "multi"),
    ("emotions_experienced", "Which emotions do you experience at work?", "multi"),
    ("physical_feeling", "How do you feel physically at work?", "choice"),
)

EVAL_QUESTIONS = (
    ("age_group", "What is your age group?", "choice"),
    ("years_at_job", "How many years have you worked at this job?", "choice"),
    (
        "assessment_helped",
        "Did the tracking and survey help assess your emotional and physical state?",
        "scale",
    ),
    (
        "boosters_helped",
        "Did the health booster tools and game make you feel positive?",
        "scale",
    ),
    (
        "overall_effective",
        "Was the system effective in improving emotional and physical positivity at work?",
        "scale",
    ),
)

EVAL_SCALE_QUESTIONS = ("assessment_helped", "boosters_helped", "overall_effective")


class EvalScale(str, Enum):
    NOT_EFFECTIVE = "not_effective"
    SOMEWHAT_EFFECTIVE = "somewhat_effective"
    VERY_EFFECTIVE = "very_effective"


def load_state_options() -> dict[str, tuple[str, ...]]:
    raw = json.loads(
        resources.files("deskpulse.feedback")
        .joinpath("data")
        .joinpath("state_options.json")
        .read_text(encoding="utf-8")
    )
    options = {key: tuple(values) for key, values in raw.items()}
    options["emotions_experienced"] = tuple(e.value for e in Emotion)
    return options


_OPTIONS = load_state_options()


def _check_choice(name: str, value: str):
    if value not in _OPTIONS[name]:
        raise ValidationError(f"{name}: unknown option {value!r}")


def _check_multi(name: str, values):
    for v in values:
        if v not in _OPTIONS[name]:
            raise ValidationError(f"{name}: unknown option {v!r}")


@dataclass(frozen=True)
class StateResponse:
    """One submission of the seven-question emotional/physical state form."""

    user_id: str
    ts: int
    age_group: str
    years_at_job: str
    mental_health_rating: str
    unhappiness_reasons: frozenset[str] = field(default_factory=frozenset)
    satisfaction_reasons: frozenset[str] = field(default_factory=frozenset)
    emotions_experienced: frozenset[Emotion] = field(default_factory=frozenset)
    physical_feeling: str = "fine"

    def __post_init__(self):
        if not self.user_id:
            raise ValidationError("user_id must be non-empty")
        if not isinstance(self.ts, int) or self.ts < 0:
            raise ValidationError(f"ts must be a non-negative integer, got {self.ts!r}")
        _check_choice("age_group", self.age_group)
        _check_choice("years_at_job", self.years_at_job)
        _check_choice("mental_health_rating", self.mental_health_rating)
        _check_multi("unhappiness_reasons", self.unhappiness_reasons)
        _check_multi("satisfaction_reasons", self.satisfaction_reasons)
        emotions = set()
        for e in self.emotions_experienced:
            try:
                emotions.add(e if isinstance(e, Emotion) else Emotion(e))
            except ValueError:
                raise ValidationError(
                    f"emotions_experienced: unknown emotion {e!r}"
                ) from None
        object.__setattr__(self, "emotions_experienced", frozenset(emotions))
        object.__setattr__(self, "unhappiness_reasons", frozenset(self.unhappiness_reasons))
        object.__setattr__(self, "satisfaction_reasons", frozenset(self.satisfaction_reasons))
        _check_choice("physical_feeling", self.physical_feeling)


@dataclass(frozen=True)
class EvalResponse:
    """One submission of the five-question system evaluation form."""

    user_id: str
    ts: int
    age_group: str
    years_at_job: str
    assessment_helped: EvalScale
    boosters_helped: EvalScale
    overall_effective: EvalScale

    def __post_init__(self):
        if not self.user_id:
            raise ValidationError("user_id must be non-empty")
        if not isinstance(self.ts, int) or self.ts < 0:
            raise ValidationError(f"ts must be a non-negative integer, got {self.ts!r}")
        _check_choice("age_group", self.age_group)
        _check_choice("years_at_job", self.years_at_job)
        for name in EVAL_SCALE_QUESTIONS:
            value = getattr(self, name)
            if not isinstance(value, EvalScale):
                try:
                    object.__setattr__(self, name, EvalScale(value))
                except ValueError:
                    raise ValidationError(f"{name}: unknown scale value {value!r}") from None


@dataclass(frozen=True)
class EvalSummary:
    """Per-question counts for each scale point, plus the all-positive flag."""

    counts: Mapping[str, Mapping[EvalScale, int]]
    responses: int
    none_not_effective: bool


def summarize_eval(responses) -> EvalSummary:
    responses = list(responses)
    counts = {
        q: {scale: 0 for scale in EvalScale} for q in EVAL_SCALE_QUESTIONS
    }
    for resp in responses:
        for q in EVAL_SCALE_QUESTIONS:
            counts[q][getattr(resp, q)] += 1
    none_not_effective = all(
        counts[q][EvalScale.NOT_EFFECTIVE] == 0 for q in EVAL_SCALE_QUESTIONS
    )
    return EvalSummary(
        counts=counts, responses=len(responses), none_not_effective=none_not_effective
    )
