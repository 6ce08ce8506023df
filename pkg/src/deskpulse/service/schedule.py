"""Twice-daily questionnaire prompt scheduling.

Prompts fire at 25% and 75% of the configured workday. A prompt is pending
once its time has passed and the matching response slot is still empty;
tokens are opaque strings the dashboard echoes back on submission.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Optional

from ..model import RuleConfig

PROMPT_FRACTIONS = (0.25, 0.75)


@dataclass(frozen=True)
class Prompt:
    token: str
    slot: int
    due_ms: int


def prompt_times(cfg: RuleConfig) -> tuple[int, ...]:
    return tuple(int(cfg.workday_ms * f) for f in PROMPT_FRACTIONS)


def prompt_token(user_id: str, date: dt.date, slot: int) -> str:
    return f"{user_id}|{date.isoformat()}|{slot}"


def pending_prompt(
    user_id: str,
    date: dt.date,
    now_ms: int,
    responses_recorded: int,
    cfg: RuleConfig,
) -> Optional[Prompt]:
    """The earliest due prompt whose response slot is still open."""
    for slot, due in enumerate(prompt_times(cfg), start=1):
        if now_ms >= due and responses_recorded < slot:
            return Prompt(token=prompt_token(user_id, date, slot), slot=slot, due_ms=due)
    return None
