"""Reading and writing the per-day trace directory.

Layout: ``<user>/<YYYY-MM-DD>/{keystrokes.csv, session.csv, speech.csv,
gaze.csv, skeleton.jsonl, face.jsonl}``. CSV quoting follows RFC 4180;
speech text is always quoted so multi-word phrases are visibly one field.
Writing is deterministic: the same trace always produces identical bytes.

CSV positions reported in errors are 1-based data-row numbers (the header
row is not counted); JSONL positions are plain line numbers.
"""

from __future__ import annotations

import datetime as dt
import json
import logging
import math
from pathlib import Path
from typing import Callable, Iterable, Sequence

from ..errors import OrderError, ParseError, ValidationError
from ..model import FACE_POINTS, JOINTS, FacePoint, Joint
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

log = logging.getLogger(__name__)

KEYSTROKES_FILE = "keystrokes.csv"
SESSION_FILE = "session.csv"
SPEECH_FILE = "speech.csv"
GAZE_FILE = "gaze.csv"
SKELETON_FILE = "skeleton.jsonl"
FACE_FILE = "face.jsonl"

TRACE_FILES = (
    KEYSTROKES_FILE,
    SESSION_FILE,
    SPEECH_FILE,
    GAZE_FILE,
    SKELETON_FILE,
    FACE_FILE,
)

_HEADERS = {
    KEYSTROKES_FILE: "ts_ms,key_class,word_completed",
    SESSION_FILE: "ts_ms,kind",
    SPEECH_FILE: "ts_ms,text",
    GAZE_FILE: "ts_ms,available,x,y",
}


def _quote(field: str) -> str:
    return '"' + field.replace('"', '""') + '"'


def _quote_if_needed(field: str) -> str:
    if any(c in field for c in (',', '"', '\n', '\r')):
        return _quote(field)
    return field


def split_csv_row(line: str, path, row) -> list[str]:
    """Minimal RFC-4180 field splitter (quotes, doubled quotes, commas)."""
    fields = []
    buf = []
    in_quotes = False
    i = 0
    while i < len(line):
        c = line[i]
        if in_quotes:
            if c == '"':
                if i + 1 < len(line) and line[i + 1] == '"':
                    buf.append('"')
                    i += 1
                else:
                    in_quotes = False
            else:
                buf.append(c)
        elif c == '"':
            if buf:
                raise ParseError("quote inside unquoted field", path, row)
            in_quotes = True
        elif c == ',':
            fields.append("".join(buf))
            buf = []
        else:
            buf.append(c)
        i += 1
    if in_quotes:
        raise ParseError("unterminated quoted field", path, row)
    fields.append("".join(buf))
    return fields


def _parse_ts(value: str, path, row) -> int:
    try:
        ts = int(value)
    except ValueError:
        raise ParseError(f"bad timestamp {value!r}", path, row) from None
    if ts < 0:
        raise ParseError(f"negative timestamp {ts}", path, row)
    return ts


def _fmt_float(x: float) -> str:
    return repr(float(x))


# --- per-row encode/decode, shared with the service's append-only store ---

def encode_keystroke(ev: KeystrokeEvent) -> str:
    word = _quote_if_needed(ev.word_completed) if ev.word_completed else ""
    return f"{ev.ts},{ev.key_class.value},{word}"


def decode_keystroke(fields: Sequence[str], path, row) -> KeystrokeEvent:
    if len(fields) != 3:
        raise ParseError(f"expected 3 fields, got {len(fields)}", path, row)
    ts = _parse_ts(fields[0], path, row)
    try:
        key_class = KeyClass(fields[1])
    except ValueError:
        raise ParseError(f"unknown key_class {fields[1]!r}", path, row) from None
    word = fields[2] or None
    return KeystrokeEvent(ts, key_class, word)


def encode_session(ev: SessionEvent) -> str:
    return f"{ev.ts},{ev.kind.value}"


def decode_session(fields: Sequence[str], path, row) -> SessionEvent:
    if len(fields) != 2:
        raise ParseError(f"expected 2 fields, got {len(fields)}", path, row)
    ts = _parse_ts(fields[0], path, row)
    try:
        kind = SessionKind(fields[1])
    except ValueError:
        raise ParseError(f"unknown session kind {fields[1]!r}", path, row) from None
    return SessionEvent(ts, kind)


def encode_speech(ev: SpeechToken) -> str:
    return f"{ev.ts},{_quote(ev.text)}"


def decode_speech(fields: Sequence[str], path, row) -> SpeechToken:
    if len(fields) != 2:
        raise ParseError(f"expected 2 fields, got {len(fields)}", path, row)
    ts = _parse_ts(fields[0], path, row)
    try:
        return SpeechToken(ts, fields[1])
    except ValidationError as exc:
        raise ParseError(str(exc), path, row) from None


def encode_gaze(ev: GazeSample) -> str:
    if ev.available:
        return f"{ev.ts},true,{_fmt_float(ev.x)},{_fmt_float(ev.y)}"
    return f"{ev.ts},false,,"


def decode_gaze(fields: Sequence[str], path, row) -> GazeSample:
    if len(fields) != 4:
        raise ParseError(f"expected 4 fields, got {len(fields)}", path, row)
    ts = _parse_ts(fields[0], path, row)
    if fields[1] not in ("true", "false"):
        raise ParseError(f"available must be true/false, got {fields[1]!r}", path, row)
    available = fields[1] == "true"
    x = y = None
    if fields[2] or fields[3]:
        try:
            x = float(fields[2])
            y = float(fields[3])
        except ValueError:
            raise ParseError(f"bad gaze coordinates {fields[2]!r},{fields[3]!r}", path, row) from None
    try:
        return GazeSample(ts, available, x, y)
    except ValidationError as exc:
        raise ParseError(str(exc), path, row) from None


def _encode_frame(ts: int, names: Iterable, points) -> str:
    parts = [f'"{n.value}":[{_fmt_float(points[n][0])},{_fmt_float(points[n][1])}]' for n in names]
    return '{"ts":%d,"points":{%s}}' % (ts, ",".join(parts))


def encode_skeleton(frame: SkeletonFrame) -> str:
    return _encode_frame(frame.ts, JOINTS, frame.joints)


def encode_face(frame: FaceFrame) -> str:
    return _encode_frame(frame.ts, FACE_POINTS, frame.points)


def _decode_frame(line: str, path, row, name_enum, factory):
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", path, row) from None
    if not isinstance(obj, dict) or "ts" not in obj or "points" not in obj:
        raise ParseError("frame object must have ts and points", path, row)
    ts = obj["ts"]
    if not isinstance(ts, int) or ts < 0:
        raise ParseError(f"bad timestamp {ts!r}", path, row)
    raw_points = obj["points"]
    if not isinstance(raw_points, dict):
        raise ParseError("points must be an object", path, row)
    points = {}
    for key, xy in raw_points.items():
        try:
            named = name_enum(key)
        except ValueError:
            raise ParseError(f"unknown point name {key!r}", path, row) from None
        if (
            not isinstance(xy, (list, tuple))
            or len(xy) != 2
            or not all(isinstance(v, (int, float)) for v in xy)
        ):
            raise ParseError(f"point {key} must be [x, y]", path, row)
        if not all(math.isfinite(float(v)) for v in xy):
            raise ParseError(f"point {key} has non-finite coordinates", path, row)
        points[named] = (float(xy[0]), float(xy[1]))
    try:
        return factory(ts, points)
    except ValidationError as exc:
        raise ValidationError(f"{path}:{row}: {exc}") from None


def decode_skeleton(line: str, path, row) -> SkeletonFrame:
    return _decode_frame(line, path, row, Joint, SkeletonFrame)


def decode_face(line: str, path, row) -> FaceFrame:
    return _decode_frame(line, path, row, FacePoint, FaceFrame)


def normalize_session_events(events: Sequence[SessionEvent]) -> tuple[SessionEvent, ...]:
    """Drop consecutive duplicate Locked/Locked or Unlocked/Unlocked events.

    Real OS event streams occasionally emit the same transition twice;
    duplicates are dropped with a warning rather than rejected.
    """
    out = []
    for ev in events:
        if out and out[-1].kind == ev.kind:
            log.warning("dropping duplicate %s session event at ts=%d", ev.kind.value, ev.ts)
            continue
        out.append(ev)
    return tuple(out)


def _read_csv(path: Path, decode: Callable):
    events = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().split("\n")
    if not lines or lines == [""]:
        return events
    for row, line in enumerate(lines[1:], start=1):
        if not line:
            continue
        fields = split_csv_row(line, path, row)
        ev = decode(fields, path, row)
        if events and ev.ts < events[-1].ts:
            raise OrderError(
                f"timestamp {ev.ts} after {events[-1].ts}", path, row
            )
        events.append(ev)
    return events


def _read_jsonl(path: Path, decode: Callable):
    frames = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            frame = decode(line, path, lineno)
            if frames and frame.ts < frames[-1].ts:
                raise OrderError(
                    f"timestamp {frame.ts} after {frames[-1].ts}", path, lineno
                )
            frames.append(frame)
    return frames


def _infer_identity(dir_path: Path):
    """Best-effort (user, date) from a <user>/<YYYY-MM-DD> path layout."""
    try:
        date = dt.date.fromisoformat(dir_path.name)
    except ValueError:
        return None, None
    user = dir_path.parent.name or None
    return user, date


def load_trace(dir_path, user_id: str | None = None, date: dt.date | None = None) -> WorkdayTrace:
    """Load and validate a trace directory; missing files become empty streams."""
    dir_path = Path(dir_path)
    if not dir_path.is_dir():
        raise ParseError("trace directory does not exist", dir_path)
    inferred_user, inferred_date = _infer_identity(dir_path)
    user_id = user_id if user_id is not None else (inferred_user or "user")
    date = date if date is not None else (inferred_date or dt.date(2024, 3, 4))

    def maybe(name, reader, decode):
        p = dir_path / name
        return reader(p, decode) if p.exists() else []

    keystrokes = maybe(KEYSTROKES_FILE, _read_csv, decode_keystroke)
    session_events = normalize_session_events(
        maybe(SESSION_FILE, _read_csv, decode_session)
    )
    speech = maybe(SPEECH_FILE, _read_csv, decode_speech)
    gaze = maybe(GAZE_FILE, _read_csv, decode_gaze)
    skeleton = maybe(SKELETON_FILE, _read_jsonl, decode_skeleton)
    face = maybe(FACE_FILE, _read_jsonl, decode_face)
    return WorkdayTrace(
        user_id=user_id,
        date=date,
        keystrokes=tuple(keystrokes),
        session_events=session_events,
        speech=tuple(speech),
        gaze=tuple(gaze),
        skeleton=tuple(skeleton),
        face=tuple(face),
    )


def write_trace(trace: WorkdayTrace, dir_path) -> list[Path]:
    """Write all six stream files (headers always present). Returns paths."""
    dir_path = Path(dir_path)
    dir_path.mkdir(parents=True, exist_ok=True)
    written = []

    def dump(name, header, lines):
        p = dir_path / name
        body = "\n".join(lines)
        content = header + "\n" + body + ("\n" if body else "")
        if header == "":
            content = body + ("\n" if body else "")
        with open(p, "w", encoding="utf-8", newline="") as fh:
            fh.write(content)
        written.append(p)

    dump(KEYSTROKES_FILE, _HEADERS[KEYSTROKES_FILE], [encode_keystroke(e) for e in trace.keystrokes])
    dump(SESSION_FILE, _HEADERS[SESSION_FILE], [encode_session(e) for e in trace.session_events])
    dump(SPEECH_FILE, _HEADERS[SPEECH_FILE], [encode_speech(e) for e in trace.speech])
    dump(GAZE_FILE, _HEADERS[GAZE_FILE], [encode_gaze(e) for e in trace.gaze])
    dump(SKELETON_FILE, "", [encode_skeleton(f) for f in trace.skeleton])
    dump(FACE_FILE, "", [encode_face(f) for f in trace.face])
    return written
