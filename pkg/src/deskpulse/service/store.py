"""File-backed per-user-per-day store behind the HTTP service.

Raw event files are append-only and use the exact trace formats, so the
whole store stays human-auditable and replayable with the CLI. Derived
analysis output is cached per day and invalidated on ingest; deleting any
cache is lossless because everything recomputes from the raw files.

Appends take a per-(user, date, modality) lock, write the whole batch with
one ``write`` call and fsync before acknowledging, so concurrent ingestion
never interleaves bytes within a file and a crash never tears a line.
"""

from __future__ import annotations

import datetime as dt
import json
import os
import threading
from pathlib import Path

from ..errors import OrderError, ParseError, ValidationError
from ..feedback.report import build_daily_report, report_to_dict
from ..feedback.store import ResponseStore
from ..ingest import files as trace_files
from ..ingest.trace import WorkdayTrace
from ..model import RuleConfig
from ..pipeline import analyze_trace

CACHE_DIR = "cache"
REPORT_CACHE = "report.json"
PREDICTIONS_CACHE = "predictions.json"

#: modality name -> (file name, header, row decoder, event encoder)
MODALITIES = {
    "keystroke": (
        trace_files.KEYSTROKES_FILE,
        "ts_ms,key_class,word_completed",
        trace_files.decode_keystroke,
        trace_files.encode_keystroke,
    ),
    "session": (
        trace_files.SESSION_FILE,
        "ts_ms,kind",
        trace_files.decode_session,
        trace_files.encode_session,
    ),
    "speech": (
        trace_files.SPEECH_FILE,
        "ts_ms,text",
        trace_files.decode_speech,
        trace_files.encode_speech,
    ),
    "gaze": (
        trace_files.GAZE_FILE,
        "ts_ms,available,x,y",
        trace_files.decode_gaze,
        trace_files.encode_gaze,
    ),
    "skeleton": (trace_files.SKELETON_FILE, None, None, trace_files.encode_skeleton),
    "face": (trace_files.FACE_FILE, None, None, trace_files.encode_face),
}


def parse_event_payload(modality: str, raw: dict):
    """One JSON event object -> validated stream event."""
    if modality == "keystroke":
        return trace_files.decode_keystroke(
            [str(raw.get("ts", "")), str(raw.get("key_class", "")), raw.get("word_completed") or ""],
            "<payload>",
            None,
        )
    if modality == "session":
        return trace_files.decode_session(
            [str(raw.get("ts", "")), str(raw.get("kind", ""))], "<payload>", None
        )
    if modality == "speech":
        return trace_files.decode_speech(
            [str(raw.get("ts", "")), str(raw.get("text", ""))], "<payload>", None
        )
    if modality == "gaze":
        x = raw.get("x")
        y = raw.get("y")
        return trace_files.decode_gaze(
            [
                str(raw.get("ts", "")),
                "true" if raw.get("available") else "false",
                "" if x is None else str(x),
                "" if y is None else str(y),
            ],
            "<payload>",
            None,
        )
    if modality in ("skeleton", "face"):
        decoder = trace_files.decode_skeleton if modality == "skeleton" else trace_files.decode_face
        return decoder(json.dumps(raw), "<payload>", None)
    raise ValidationError(f"unknown modality {modality!r}")


class UserDayStore:
    """Append-only persistence rooted at ``<root>/<user>/<YYYY-MM-DD>/``."""

    def __init__(self, root, cfg: RuleConfig | None = None):
        self.root = Path(root)
        self.cfg = cfg or RuleConfig()
        self._locks: dict[tuple, threading.Lock] = {}
        self._last_ts: dict[tuple, int] = {}
        self._guard = threading.Lock()

    def day_dir(self, user_id: str, date: dt.date) -> Path:
        if not user_id or "/" in user_id or user_id.startswith("."):
            raise ValidationError(f"bad user id {user_id!r}")
        return self.root / user_id / date.isoformat()

    def _lock_for(self, key) -> threading.Lock:
        with self._guard:
            if key not in self._locks:
                self._locks[key] = threading.Lock()
            return self._locks[key]

    def _tail_ts(self, path: Path, modality: str) -> int:
        if not path.exists():
            return -1
        _, header, _, _ = MODALITIES[modality]
        last = -1
        with open(path, "r", encoding="utf-8") as fh:
            for i, line in enumerate(fh):
                if header is not None and i == 0:
                    continue
                line = line.strip()
                if not line:
                    continue
                if header is not None:
                    last = int(line.split(",", 1)[0])
                else:
                    last = json.loads(line)["ts"]
        return last

    def append_events(self, user_id: str, date: dt.date, modality: str, events) -> int:
        """Validate, order-check, append, fsync; returns accepted count."""
        if modality not in MODALITIES:
            raise ValidationError(f"unknown modality {modality!r}")
        parsed = [parse_event_payload(modality, raw) for raw in events]
        if not parsed:
            return 0
        name, header, _, encode = MODALITIES[modality]
        key = (user_id, date.isoformat(), modality)
        with self._lock_for(key):
            day = self.day_dir(user_id, date)
            day.mkdir(parents=True, exist_ok=True)
            path = day / name
            if key not in self._last_ts:
                self._last_ts[key] = self._tail_ts(path, modality)
            last = self._last_ts[key]
            for ev in parsed:
                if ev.ts < last:
                    raise OrderError(
                        f"event ts {ev.ts} older than last persisted ts {last}",
                        path,
                    )
                last = ev.ts
            lines = "".join(encode(ev) + "\n" for ev in parsed)
            prefix = ""
            if not path.exists() and header is not None:
                prefix = header + "\n"
            fd = os.open(path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
            try:
                os.write(fd, (prefix + lines).encode("utf-8"))
                os.fsync(fd)
            finally:
                os.close(fd)
            self._last_ts[key] = last
            self.invalidate_cache(user_id, date)
            return len(parsed)

    # -- derived data ---------------------------------------------------------

    def cache_dir(self, user_id: str, date: dt.date) -> Path:
        return self.day_dir(user_id, date) / CACHE_DIR

    def invalidate_cache(self, user_id: str, date: dt.date):
        cache = self.cache_dir(user_id, date)
        for name in (REPORT_CACHE, PREDICTIONS_CACHE):
            p = cache / name
            if p.exists():
                p.unlink()

    def load_day_trace(self, user_id: str, date: dt.date) -> WorkdayTrace:
        day = self.day_dir(user_id, date)
        if not day.is_dir():
            return WorkdayTrace(user_id=user_id, date=date)
        return trace_files.load_trace(day, user_id=user_id, date=date)

    def responses(self, user_id: str, date: dt.date) -> ResponseStore:
        return ResponseStore(self.day_dir(user_id, date))

    def _cached_json(self, user_id: str, date: dt.date, name: str, compute) -> bytes:
        cache = self.cache_dir(user_id, date)
        path = cache / name
        if path.exists():
            return path.read_bytes()
        payload = (json.dumps(compute(), indent=2) + "\n").encode("utf-8")
        cache.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(payload)
        tmp.replace(path)
        return payload

    def report_bytes(self, user_id: str, date: dt.date) -> bytes:
        def compute():
            trace = self.load_day_trace(user_id, date)
            analysis = analyze_trace(trace, self.cfg)
            responses = self.responses(user_id, date).load_state_responses()
            return report_to_dict(build_daily_report(trace, analysis, responses, self.cfg))

        return self._cached_json(user_id, date, REPORT_CACHE, compute)

    def predictions_bytes(self, user_id: str, date: dt.date) -> bytes:
        def compute():
            trace = self.load_day_trace(user_id, date)
            analysis = analyze_trace(trace, self.cfg)
            return {
                "windows": [
                    {
                        "window_start": f.window_start,
                        "window_end": f.window_end,
                        "top": f.top.value,
                        "ranked": [
                            {"emotion": e.value, "p": f"{p.numerator}/{p.denominator}"}
                            for e, p in f.ranked
                        ],
                    }
                    for f in analysis.fused
                ],
                "sessions": [
                    {
                        "window_count": s.window_count,
                        "rates": {
                            e.value: f"{r.numerator}/{r.denominator}"
                            for e, r in s.rates.items()
                        },
                    }
                    for s in analysis.sessions
                ],
            }

        return self._cached_json(user_id, date, PREDICTIONS_CACHE, compute)

    def all_eval_responses(self):
        """Every recorded evaluation response across users and days."""
        out = []
        if not self.root.is_dir():
            return out
        for user_dir in sorted(self.root.iterdir()):
            if not user_dir.is_dir():
                continue
            for day_dir in sorted(user_dir.iterdir()):
                if day_dir.is_dir():
                    out.extend(ResponseStore(day_dir).load_eval_responses())
        return out
