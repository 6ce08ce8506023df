"""Self-report questionnaires, response persistence, and daily reports."""

from .questionnaire import (
    EVAL_QUESTIONS,
    EVAL_SCALE_QUESTIONS,
    STATE_QUESTIONS,
    EvalResponse,
    EvalScale,
    EvalSummary,
    StateResponse,
    load_state_options,
    summarize_eval,
)
from .report import (
    DailyReport,
    RapFapAgreement,
    build_daily_report,
    report_to_dict,
    report_to_json,
    report_to_text,
    validate_rap,
)
from .store import EVAL_FILE, RESPONSES_FILE, STATE_DAILY_CAP, ResponseStore

__all__ = [
    "EVAL_QUESTIONS",
    "EVAL_SCALE_QUESTIONS",
    "STATE_QUESTIONS",
    "EvalResponse",
    "EvalScale",
    "EvalSummary",
    "StateResponse",
    "load_state_options",
    "summarize_eval",
    "DailyReport",
    "RapFapAgreement",
    "build_daily_report",
    "report_to_dict",
    "report_to_json",
    "report_to_text",
    "validate_rap",
    "EVAL_FILE",
    "RESPONSES_FILE",
    "STATE_DAILY_CAP",
    "ResponseStore",
]
