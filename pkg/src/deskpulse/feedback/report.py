"""Daily report assembly: predictions, activity, telemetry, self-reports.

The report carries two separate bar-chart series: window counts from the
rule-based predictions and selection counts from the self-reported
emotions. Mixing measured and self-reported numbers into one series would
be misleading, so they are never merged.

Agreement pairs each state response with the monitored session (half of
the workday) containing its timestamp: agreed when the session's
highest-rate emotion is among the emotions the user reported.
"""

from __future__ import annotations

import datetime as dt
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..errors import EmptySession
from ..fusion import SessionSummary
from ..ingest.trace import WorkdayTrace
from ..model import EMOTIONS, Emotion, RuleConfig
from ..pipeline import AnalysisResult
from .questionnaire import StateResponse


@dataclass(frozen=True)
class RapFapAgreement:
    sessions_compared: int
    agreed: int

    @property
    def rate(self) -> Optional[Fraction]:
        if self.sessions_compared == 0:
            return None
        return Fraction(self.agreed, self.sessions_compared)


@dataclass(frozen=True)
class DailyReport:
    user_id: str
    date: dt.date
    session_summaries: tuple[SessionSummary, ...]
    day_summary: SessionSummary
    keystrokes: object
    interruptions: object
    dwell_count: int
    absence_total_seconds: float
    fap_emotions: dict[Emotion, int]
    agreement: RapFapAgreement
    bar_chart: dict[str, dict[Emotion, int]]


def validate_rap(summary: SessionSummary, resp: StateResponse) -> bool:
    """True when the session's top emotion matches the self-report.

    Ties count as agreement if any tied top emotion was reported.
    """
    if summary.window_count == 0:
        raise EmptySession("cannot validate an empty session")
    return bool(summary.argmax() & resp.emotions_experienced)


def _pair_sessions(
    sessions: Sequence[SessionSummary],
    responses: Sequence[StateResponse],
    cfg: RuleConfig,
) -> RapFapAgreement:
    half = cfg.workday_ms // len(sessions) if sessions else 0
    compared = 0
    agreed = 0
    for resp in responses:
        idx = min(resp.ts // half, len(sessions) - 1) if half else 0
        if not sessions:
            continue
        summary = sessions[idx]
        if summary.window_count == 0:
            continue
        compared += 1
        if validate_rap(summary, resp):
            agreed += 1
    return RapFapAgreement(sessions_compared=compared, agreed=agreed)


def build_daily_report(
    trace: WorkdayTrace,
    analysis: AnalysisResult,
    responses: Sequence[StateResponse],
    cfg: RuleConfig | None = None,
) -> DailyReport:
    cfg = cfg or RuleConfig()
    responses = sorted(responses, key=lambda r: r.ts)
    rap_counts = Counter(f.top for f in analysis.fused)
    fap_counts = Counter()
    for resp in responses:
        for emotion in resp.emotions_experienced:
            fap_counts[emotion] += 1
    return DailyReport(
        user_id=trace.user_id,
        date=trace.date,
        session_summaries=analysis.sessions,
        day_summary=analysis.day_summary,
        keystrokes=analysis.keystrokes,
        interruptions=analysis.interruptions,
        dwell_count=analysis.dwell_count,
        absence_total_seconds=analysis.absence_total_seconds,
        fap_emotions={e: fap_counts[e] for e in EMOTIONS if fap_counts[e]},
        agreement=_pair_sessions(analysis.sessions, responses, cfg),
        bar_chart={
            "rap": {e: rap_counts.get(e, 0) for e in EMOTIONS},
            "fap": {e: fap_counts.get(e, 0) for e in EMOTIONS},
        },
    )


def _fraction_str(value) -> str:
    if value is None:
        return "undefined"
    return f"{value.numerator}/{value.denominator}"


def _summary_dict(summary: SessionSummary) -> dict:
    return {
        "window_count": summary.window_count,
        "rates": {e.value: _fraction_str(summary.rates[e]) for e in EMOTIONS},
    }


def report_to_dict(report: DailyReport) -> dict:
    """Machine-readable form; stable key order for byte-identical output."""
    return {
        "user": report.user_id,
        "date": report.date.isoformat(),
        "keystrokes": {
            "total_keystrokes": report.keystrokes.total_keystrokes,
            "words_per_minute": round(report.keystrokes.words_per_minute, 3),
            "typing_sessions": report.keystrokes.typing_sessions,
            "mean_session_duration_s": round(report.keystrokes.mean_session_duration, 3),
            "mean_gap_between_sessions_s": round(
                report.keystrokes.mean_gap_between_sessions, 3
            ),
            "low_productivity_flag": report.keystrokes.low_productivity_flag,
        },
        "interruptions": {
            "breaks": report.interruptions.breaks,
            "mean_break_duration_s": round(report.interruptions.mean_break_duration, 3),
            "total_locked_time_s": round(report.interruptions.total_locked_time, 3),
            "disengagement_flag": report.interruptions.disengagement_flag,
        },
        "gaze": {
            "dwell_count": report.dwell_count,
            "absence_total_seconds": round(report.absence_total_seconds, 3),
        },
        "day_summary": _summary_dict(report.day_summary),
        "sessions": [_summary_dict(s) for s in report.session_summaries],
        "fap_emotions": {e.value: n for e, n in report.fap_emotions.items()},
        "agreement": {
            "sessions_compared": report.agreement.sessions_compared,
            "agreed": report.agreement.agreed,
            "rate": _fraction_str(report.agreement.rate),
        },
        "bar_chart": {
            series: {e.value: counts[e] for e in EMOTIONS}
            for series, counts in report.bar_chart.items()
        },
    }


def report_to_json(report: DailyReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"


def report_to_text(report: DailyReport) -> str:
    """Stable, diffable plain-text rendering."""
    d = report_to_dict(report)
    lines = [
        "# daily affect report",
        f"user: {d['user']}",
        f"date: {d['date']}",
        "",
        "[keystrokes]",
    ]
    for key, value in d["keystrokes"].items():
        lines.append(f"{key}: {value}")
    lines.append("")
    lines.append("[interruptions]")
    for key, value in d["interruptions"].items():
        lines.append(f"{key}: {value}")
    lines.append("")
    lines.append("[gaze]")
    lines.append(f"dwell_count: {d['gaze']['dwell_count']}")
    lines.append(f"absence_total_seconds: {d['gaze']['absence_total_seconds']}")
    lines.append("")
    lines.append("[predictions]")
    lines.append(f"fused_windows: {d['day_summary']['window_count']}")
    for name, rate in d["day_summary"]["rates"].items():
        lines.append(f"rate {name}: {rate}")
    for i, session in enumerate(d["sessions"], start=1):
        lines.append(f"session {i} windows: {session['window_count']}")
    lines.append("")
    lines.append("[feedback]")
    if d["fap_emotions"]:
        for name, count in d["fap_emotions"].items():
            lines.append(f"reported {name}: {count}")
    else:
        lines.append("reported: none")
    lines.append(
        "agreement: "
        f"{d['agreement']['agreed']}/{d['agreement']['sessions_compared']} "
        f"(rate {d['agreement']['rate']})"
    )
    lines.append("")
    lines.append("[bar_chart]")
    for series in ("rap", "fap"):
        for name, count in d["bar_chart"][series].items():
            lines.append(f"{series} {name}: {count}")
    return "\n".join(lines) + "\n"
