"""Keystroke statistics, typing-session segmentation, and break counting.

Every key class counts toward the keystroke total. Typing sessions split
where the inter-key gap exceeds ``typing_gap_seconds``. Words-per-minute
uses the standard five-characters-per-word convention over active typing
time. Breaks are Locked -> Unlocked workstation intervals; a trailing
Locked with no Unlock runs to the end of the workday.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .ingest.trace import KeyClass, KeystrokeEvent, SessionEvent, SessionKind
from .model import RuleConfig


@dataclass(frozen=True)
class KeystrokeReport:
    total_keystrokes: int
    words_per_minute: float
    typing_sessions: int
    mean_session_duration: float  # seconds
    mean_gap_between_sessions: float  # seconds
    low_productivity_flag: bool


@dataclass(frozen=True)
class InterruptionReport:
    breaks: int
    mean_break_duration: float  # seconds
    total_locked_time: float  # seconds
    disengagement_flag: bool


def split_typing_sessions(
    events: Sequence[KeystrokeEvent], cfg: RuleConfig
) -> list[tuple[int, int]]:
    """(first_ts, last_ts) per typing session, split on gaps > typing_gap."""
    sessions = []
    start = None
    prev = None
    for ev in events:
        if start is None:
            start = prev = ev.ts
            continue
        if ev.ts - prev > cfg.typing_gap_ms:
            sessions.append((start, prev))
            start = ev.ts
        prev = ev.ts
    if start is not None:
        sessions.append((start, prev))
    return sessions


def keystroke_stats(events: Sequence[KeystrokeEvent], cfg: RuleConfig) -> KeystrokeReport:
    total = len(events)
    sessions = split_typing_sessions(events, cfg)
    durations_ms = [last - first for first, last in sessions]
    active_ms = sum(durations_ms)
    char_count = sum(1 for ev in events if ev.key_class == KeyClass.CHARACTER)
    wpm = 0.0
    if active_ms > 0:
        wpm = (char_count / 5.0) / (active_ms / 60_000.0)
    gaps_ms = [
        sessions[i + 1][0] - sessions[i][1] for i in range(len(sessions) - 1)
    ]
    return KeystrokeReport(
        total_keystrokes=total,
        words_per_minute=wpm,
        typing_sessions=len(sessions),
        mean_session_duration=(active_ms / len(sessions) / 1000.0) if sessions else 0.0,
        mean_gap_between_sessions=(sum(gaps_ms) / len(gaps_ms) / 1000.0) if gaps_ms else 0.0,
        low_productivity_flag=total < cfg.keystroke_threshold,
    )


def interruption_stats(
    events: Sequence[SessionEvent],
    cfg: RuleConfig,
    workday_end_ms: Optional[int] = None,
) -> InterruptionReport:
    """Break statistics over alternation-normalized session events.

    ``workday_end_ms`` closes a trailing unmatched Locked; it defaults to
    the configured workday length, or the last event timestamp if later.
    """
    if workday_end_ms is None:
        workday_end_ms = cfg.workday_ms
        if events:
            workday_end_ms = max(workday_end_ms, events[-1].ts)
    breaks = []
    locked_at = None
    for ev in events:
        if ev.kind == SessionKind.LOCKED:
            locked_at = ev.ts
        elif locked_at is not None:
            breaks.append(ev.ts - locked_at)
            locked_at = None
    if locked_at is not None:
        breaks.append(max(0, workday_end_ms - locked_at))
    total_locked = sum(breaks)
    return InterruptionReport(
        breaks=len(breaks),
        mean_break_duration=(total_locked / len(breaks) / 1000.0) if breaks else 0.0,
        total_locked_time=total_locked / 1000.0,
        disengagement_flag=len(breaks) >= cfg.break_threshold,
    )
