"""Command-line entry point.

Subcommands map 1:1 onto the library: ``simulate`` (synthetic traces),
``analyze`` (full pipeline over a trace directory), ``report`` (daily
report from a service data directory), ``eval-summary``, and ``serve``.
Everything is reproducible: no wall-clock or unseeded randomness touches
any output. Exit codes: 0 success, 1 input error, 2 internal error.
"""

from __future__ import annotations

import argparse
import datetime as dt
import json
import sys
from pathlib import Path

from .errors import InputError
from .feedback.report import build_daily_report, report_to_json, report_to_text
from .feedback.store import ResponseStore
from .feedback.questionnaire import summarize_eval
from .ingest import Persona, SIM_DATE, load_trace, simulate_workday, write_trace
from .model import RuleConfig, load_config
from .pipeline import analyze_trace


def _load_cfg(args) -> RuleConfig:
    if getattr(args, "config", None):
        return load_config(args.config)
    return RuleConfig()


def _parse_date(value: str) -> dt.date:
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise InputError(f"bad date {value!r}, expected YYYY-MM-DD") from None


def cmd_simulate(args) -> int:
    cfg = _load_cfg(args)
    trace = simulate_workday(
        Persona(args.persona),
        args.seed,
        cfg,
        user_id=args.user,
        date=_parse_date(args.date) if args.date else SIM_DATE,
    )
    written = write_trace(trace, args.out)
    print(f"wrote {len(written)} stream files to {args.out}")
    print(
        f"persona={args.persona} seed={args.seed} "
        f"keystrokes={len(trace.keystrokes)} breaks={len(trace.session_events) // 2} "
        f"frames={len(trace.skeleton)} gaze={len(trace.gaze)} speech={len(trace.speech)}"
    )
    return 0


def _write_analysis_files(out_dir: Path, report, analysis):
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.txt").write_text(report_to_text(report), encoding="utf-8")
    (out_dir / "report.json").write_text(report_to_json(report), encoding="utf-8")
    sessions = [
        {
            "window_count": s.window_count,
            "rates": {e.value: f"{r.numerator}/{r.denominator}" for e, r in s.rates.items()},
        }
        for s in analysis.sessions
    ]
    (out_dir / "sessions.json").write_text(
        json.dumps(sessions, indent=2) + "\n", encoding="utf-8"
    )


def _write_gaze_scatter(out_dir: Path, trace):
    lines = ["ts_ms,x"]
    lines += [f"{s.ts},{s.x!r}" for s in trace.gaze if s.available]
    (out_dir / "gaze_scatter.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_analyze(args) -> int:
    cfg = _load_cfg(args)
    trace_dir = Path(args.trace_dir)
    if not trace_dir.is_dir():
        raise InputError(f"trace directory not found: {trace_dir}")
    trace = load_trace(trace_dir, user_id=args.user, date=_parse_date(args.date) if args.date else None)
    analysis = analyze_trace(trace, cfg)
    responses = ResponseStore(trace_dir).load_state_responses()
    report = build_daily_report(trace, analysis, responses, cfg)
    if args.out:
        out_dir = Path(args.out)
        _write_analysis_files(out_dir, report, analysis)
        _write_gaze_scatter(out_dir, trace)
        print(f"analysis written to {out_dir}", file=sys.stderr)
    sys.stdout.write(
        report_to_json(report) if args.format == "machine" else report_to_text(report)
    )
    return 0


def cmd_report(args) -> int:
    from .service.store import UserDayStore

    cfg = _load_cfg(args)
    store = UserDayStore(args.data, cfg)
    user = args.user
    date = _parse_date(args.date)
    if args.format == "machine":
        sys.stdout.write(store.report_bytes(user, date).decode("utf-8"))
    else:
        trace = store.load_day_trace(user, date)
        analysis = analyze_trace(trace, cfg)
        responses = store.responses(user, date).load_state_responses()
        sys.stdout.write(report_to_text(build_daily_report(trace, analysis, responses, cfg)))
    return 0


def cmd_eval_summary(args) -> int:
    if args.file:
        responses = ResponseStore(Path(args.file).parent).load_eval_responses()
    else:
        from .service.store import UserDayStore

        responses = UserDayStore(args.data).all_eval_responses()
    summary = summarize_eval(responses)
    payload = {
        "responses": summary.responses,
        "none_not_effective": summary.none_not_effective,
        "counts": {
            q: {scale.value: n for scale, n in by_scale.items()}
            for q, by_scale in summary.counts.items()
        },
    }
    print(json.dumps(payload, indent=2))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    cfg = _load_cfg(args)
    app = create_app(args.data, cfg, seed=args.seed, dashboard_dir=args.dashboard)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deskpulse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a synthetic workday trace")
    p.add_argument("--persona", required=True, choices=[x.value for x in Persona])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output trace directory")
    p.add_argument("--user", default=None)
    p.add_argument("--date", default=None, help="YYYY-MM-DD")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="run the full pipeline over a trace directory")
    p.add_argument("trace_dir")
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None, help="directory for report/exports")
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.add_argument("--user", default=None)
    p.add_argument("--date", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("report", help="daily report from a service data directory")
    p.add_argument("--data", required=True)
    p.add_argument("--user", required=True)
    p.add_argument("--date", required=True)
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("eval-summary", help="summarize evaluation questionnaire responses")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--data", help="service data directory")
    group.add_argument("--file", help="a single eval.csv file")
    p.set_defaults(func=cmd_eval_summary)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--data", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", default=None)
    p.add_argument("--dashboard", default=None, help="static dashboard directory to serve")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
