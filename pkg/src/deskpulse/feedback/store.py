"""Append-only CSV persistence for questionnaire responses.

One file per user-day directory. Shape: ``ts_ms,user_id,question_id,answer``
with one row per question; multi-choice answers are ``;``-joined inside a
single quoted field. Appends are serialized per store and written with a
single fsync'd write, so a crash never tears a response apart.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path
from typing import Optional

from ..errors import CapExceeded, ParseError, ValidationError
from ..ingest.files import split_csv_row
from ..model import Emotion
from .questionnaire import EvalResponse, EvalScale, StateResponse

RESPONSES_FILE = "responses.csv"
EVAL_FILE = "eval.csv"
_HEADER = "ts_ms,user_id,question_id,answer"

STATE_DAILY_CAP = 2

_STATE_FIELDS = (
    "age_group",
    "years_at_job",
    "mental_health_rating",
    "unhappiness_reasons",
    "satisfaction_reasons",
    "emotions_experienced",
    "physical_feeling",
)
_STATE_MULTI = ("unhappiness_reasons", "satisfaction_reasons", "emotions_experienced")
_EVAL_FIELDS = (
    "age_group",
    "years_at_job",
    "assessment_helped",
    "boosters_helped",
    "overall_effective",
)


def _quote(field: str) -> str:
    return '"' + field.replace('"', '""') + '"'


def _encode_response(resp, field_names, multi_names) -> str:
    rows = []
    for name in field_names:
        value = getattr(resp, name)
        if name in multi_names:
            answer = ";".join(sorted(v.value if isinstance(v, Emotion) else v for v in value))
        elif isinstance(value, (Emotion, EvalScale)):
            answer = value.value
        else:
            answer = value
        rows.append(f"{resp.ts},{_quote(resp.user_id)},{name},{_quote(answer)}")
    return "\n".join(rows) + "\n"


def _rows_to_responses(rows, path, factory, field_names, multi_names):
    grouped: dict[tuple[int, str], dict] = {}
    order: list[tuple[int, str]] = []
    for ts, user, qid, answer in rows:
        key = (ts, user)
        if key not in grouped:
            grouped[key] = {}
            order.append(key)
        if qid not in field_names:
            raise ParseError(f"unknown question_id {qid!r}", path)
        if qid in multi_names:
            grouped[key][qid] = frozenset(a for a in answer.split(";") if a)
        else:
            grouped[key][qid] = answer
    responses = []
    for ts, user in order:
        answers = grouped[(ts, user)]
        missing = [f for f in field_names if f not in answers]
        if missing:
            raise ParseError(
                f"response ts={ts} user={user!r} missing answers: {missing}", path
            )
        responses.append(factory(user_id=user, ts=ts, **answers))
    return responses


class ResponseStore:
    """Questionnaire persistence for one (user, day) directory."""

    def __init__(self, dir_path):
        self.dir = Path(dir_path)
        self._lock = threading.Lock()

    # -- state questionnaire ------------------------------------------------

    def record_state_response(self, resp: StateResponse) -> bool:
        """Append one response; False when an exact (ts, user) duplicate.

        Raises CapExceeded on a third distinct response in the day.
        """
        with self._lock:
            existing = self.load_state_responses()
            if any(r.ts == resp.ts and r.user_id == resp.user_id for r in existing):
                return False
            if len(existing) >= STATE_DAILY_CAP:
                raise CapExceeded(
                    f"user {resp.user_id!r} already submitted "
                    f"{STATE_DAILY_CAP} state responses today"
                )
            self._append(RESPONSES_FILE, _encode_response(resp, _STATE_FIELDS, _STATE_MULTI))
            return True

    def load_state_responses(self) -> list[StateResponse]:
        return self._load(RESPONSES_FILE, StateResponse, _STATE_FIELDS, _STATE_MULTI)

    # -- evaluation questionnaire -------------------------------------------

    def record_eval_response(self, resp: EvalResponse) -> bool:
        with self._lock:
            existing = self.load_eval_responses()
            if any(r.ts == resp.ts and r.user_id == resp.user_id for r in existing):
                return False
            self._append(EVAL_FILE, _encode_response(resp, _EVAL_FIELDS, ()))
            return True

    def load_eval_responses(self) -> list[EvalResponse]:
        return self._load(EVAL_FILE, EvalResponse, _EVAL_FIELDS, ())

    # -- plumbing -------------------------------------------------------------

    def _append(self, name: str, payload: str):
        self.dir.mkdir(parents=True, exist_ok=True)
        path = self.dir / name
        if not path.exists():
            payload = _HEADER + "\n" + payload
        fd = os.open(path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
        try:
            os.write(fd, payload.encode("utf-8"))
            os.fsync(fd)
        finally:
            os.close(fd)

    def _load(self, name: str, factory, field_names, multi_names):
        path = self.dir / name
        if not path.exists():
            return []
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().split("\n")
        for lineno, line in enumerate(lines[1:], start=1):
            if not line:
                continue
            fields = split_csv_row(line, path, lineno)
            if len(fields) != 4:
                raise ParseError(f"expected 4 fields, got {len(fields)}", path, lineno)
            try:
                ts = int(fields[0])
            except ValueError:
                raise ParseError(f"bad timestamp {fields[0]!r}", path, lineno) from None
            rows.append((ts, fields[1], fields[2], fields[3]))
        try:
            return _rows_to_responses(rows, path, factory, field_names, multi_names)
        except ValidationError as exc:
            raise ParseError(str(exc), path) from None
