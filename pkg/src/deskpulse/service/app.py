"""HTTP service: event ingestion, reports, questionnaires, quotes, game.

All state lives in the file store (or in-memory for game sessions); every
payload is plain JSON with field names matching the domain types. The API
is versioned under ``/v1/``. Timestamps in payloads are milliseconds since
the start of the monitored workday; ``now_ms`` query parameters exist so
clients (and tests) can drive time explicitly instead of trusting the
server clock.
"""

from __future__ import annotations

import datetime as dt
import threading
import uuid
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse, Response

from .. import kernels
from ..booster.game import GameConfig, GameState, Move, game_step, new_game, snapshot
from ..booster.quotes import QuoteKind, QuoteRotator, default_quotes, next_quote
from ..errors import CapExceeded, GameOver, InputError, OrderError
from ..feedback.questionnaire import EvalResponse, StateResponse, summarize_eval
from ..feedback.store import STATE_DAILY_CAP
from ..model import RuleConfig
from .schedule import pending_prompt, prompt_token
from .store import MODALITIES, UserDayStore


def _parse_date(value: str) -> dt.date:
    try:
        return dt.date.fromisoformat(value)
    except ValueError:
        raise HTTPException(status_code=400, detail=f"bad date {value!r}") from None


def _now_ms_default() -> int:
    now = dt.datetime.now()
    midnight = now.replace(hour=0, minute=0, second=0, microsecond=0)
    return int((now - midnight).total_seconds() * 1000)


class _GameSessions:
    def __init__(self, cfg: GameConfig, seed: int):
        self.cfg = cfg
        self._seed = seed
        self._sessions: dict[str, GameState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def create(self, seed: Optional[int]) -> tuple[str, GameState]:
        with self._guard:
            if seed is None:
                seed = self._seed
                self._seed += 1
            game_id = uuid.uuid4().hex[:12]
            state = new_game(seed, self.cfg)
            self._sessions[game_id] = state
            self._locks[game_id] = threading.Lock()
            return game_id, state

    def get(self, game_id: str) -> GameState:
        state = self._sessions.get(game_id)
        if state is None:
            raise HTTPException(status_code=404, detail=f"unknown game {game_id!r}")
        return state

    def step(self, game_id: str, move: Move) -> GameState:
        with self._guard:
            lock = self._locks.get(game_id)
        if lock is None:
            raise HTTPException(status_code=404, detail=f"unknown game {game_id!r}")
        with lock:
            state = game_step(self._sessions[game_id], move, self.cfg)
            self._sessions[game_id] = state
            return state


def create_app(
    data_dir,
    cfg: RuleConfig | None = None,
    seed: int = 0,
    game_cfg: GameConfig | None = None,
    dashboard_dir=None,
) -> FastAPI:
    cfg = cfg or RuleConfig()
    store = UserDayStore(data_dir, cfg)
    games = _GameSessions(game_cfg or GameConfig(), seed)
    rotators = {
        kind: QuoteRotator(default_quotes(kind), seed=seed + i)
        for i, kind in enumerate(QuoteKind)
    }
    rotator_locks = {kind: threading.Lock() for kind in QuoteKind}

    app = FastAPI(title="deskpulse", version="0.1.0")

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        status = 409 if isinstance(exc, OrderError) else 400
        return JSONResponse(status_code=status, content={"error": str(exc)})

    @app.exception_handler(CapExceeded)
    async def _cap_error(request: Request, exc: CapExceeded):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.get("/v1/healthz")
    def healthz():
        return {"status": "ok", "kernel_backend": kernels.BACKEND}

    # -- ingestion ------------------------------------------------------------

    @app.post("/v1/events/{modality}")
    async def ingest(modality: str, request: Request):
        if modality not in MODALITIES:
            raise HTTPException(status_code=400, detail=f"unknown modality {modality!r}")
        body = await request.json()
        user = body.get("user")
        if not user:
            raise HTTPException(status_code=400, detail="user is required")
        date = _parse_date(body.get("date", ""))
        events = body.get("events")
        if not isinstance(events, list):
            raise HTTPException(status_code=400, detail="events must be a list")
        accepted = store.append_events(user, date, modality, events)
        return {"accepted": accepted}

    # -- reports and predictions ----------------------------------------------

    @app.get("/v1/report")
    def report(user: str, date: str, format: str = Query("machine")):
        day = _parse_date(date)
        if format == "text":
            from ..feedback.report import build_daily_report, report_to_text

            trace = store.load_day_trace(user, day)
            from ..pipeline import analyze_trace

            analysis = analyze_trace(trace, cfg)
            responses = store.responses(user, day).load_state_responses()
            return PlainTextResponse(
                report_to_text(build_daily_report(trace, analysis, responses, cfg))
            )
        return Response(content=store.report_bytes(user, day), media_type="application/json")

    @app.get("/v1/predictions")
    def predictions(user: str, date: str):
        return Response(
            content=store.predictions_bytes(user, _parse_date(date)),
            media_type="application/json",
        )

    # -- questionnaires ---------------------------------------------------------

    @app.get("/v1/prompt")
    def prompt(user: str, date: str = "", now_ms: Optional[int] = None):
        day = _parse_date(date) if date else dt.date.today()
        now = now_ms if now_ms is not None else _now_ms_default()
        recorded = len(store.responses(user, day).load_state_responses())
        pending = pending_prompt(user, day, now, recorded, cfg)
        if pending is None:
            return {"prompt": None, "responses_recorded": recorded}
        return {
            "prompt": pending.token,
            "slot": pending.slot,
            "due_ms": pending.due_ms,
            "responses_recorded": recorded,
        }

    @app.post("/v1/questionnaire/state")
    async def submit_state(request: Request):
        body = await request.json()
        user = body.get("user")
        if not user:
            raise HTTPException(status_code=400, detail="user is required")
        day = _parse_date(body.get("date", ""))
        token = body.get("token")
        if token is not None:
            valid = {prompt_token(user, day, slot) for slot in (1, 2)}
            if token not in valid:
                raise HTTPException(status_code=400, detail="bad prompt token")
        resp = StateResponse(
            user_id=user,
            ts=int(body.get("ts", 0)),
            age_group=body.get("age_group", ""),
            years_at_job=body.get("years_at_job", ""),
            mental_health_rating=body.get("mental_health_rating", ""),
            unhappiness_reasons=frozenset(body.get("unhappiness_reasons", ())),
            satisfaction_reasons=frozenset(body.get("satisfaction_reasons", ())),
            emotions_experienced=frozenset(body.get("emotions_experienced", ())),
            physical_feeling=body.get("physical_feeling", ""),
        )
        recorded = store.responses(user, day).record_state_response(resp)
        store.invalidate_cache(user, day)
        return {"recorded": recorded, "duplicate": not recorded, "cap": STATE_DAILY_CAP}

    @app.post("/v1/questionnaire/evaluation")
    async def submit_eval(request: Request):
        body = await request.json()
        user = body.get("user")
        if not user:
            raise HTTPException(status_code=400, detail="user is required")
        day = _parse_date(body.get("date", ""))
        resp = EvalResponse(
            user_id=user,
            ts=int(body.get("ts", 0)),
            age_group=body.get("age_group", ""),
            years_at_job=body.get("years_at_job", ""),
            assessment_helped=body.get("assessment_helped", ""),
            boosters_helped=body.get("boosters_helped", ""),
            overall_effective=body.get("overall_effective", ""),
        )
        recorded = store.responses(user, day).record_eval_response(resp)
        return {"recorded": recorded, "duplicate": not recorded}

    @app.get("/v1/evaluation/summary")
    def eval_summary():
        summary = summarize_eval(store.all_eval_responses())
        return {
            "responses": summary.responses,
            "none_not_effective": summary.none_not_effective,
            "counts": {
                q: {scale.value: n for scale, n in by_scale.items()}
                for q, by_scale in summary.counts.items()
            },
        }

    # -- boosters -----------------------------------------------------------------

    @app.get("/v1/quotes/next")
    def quote(kind: str, now_ms: Optional[int] = None):
        try:
            quote_kind = QuoteKind(kind)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown quote kind {kind!r}") from None
        now = now_ms if now_ms is not None else _now_ms_default()
        with rotator_locks[quote_kind]:
            picked, _ = next_quote(rotators[quote_kind], now)
        return {"kind": quote_kind.value, "text": picked.text, "author": picked.author}

    @app.post("/v1/game")
    async def create_game(request: Request):
        body = {}
        if int(request.headers.get("content-length") or 0) > 0:
            body = await request.json()
        game_id, state = games.create(body.get("seed"))
        return {"id": game_id, "state": snapshot(state, games.cfg)}

    @app.post("/v1/game/{game_id}/input")
    async def game_input(game_id: str, request: Request):
        body = await request.json()
        try:
            move = Move(body.get("move", ""))
        except ValueError:
            raise HTTPException(
                status_code=400, detail=f"move must be one of {[m.value for m in Move]}"
            ) from None
        try:
            state = games.step(game_id, move)
        except GameOver as exc:
            return JSONResponse(status_code=409, content={"error": str(exc)})
        return {"state": snapshot(state, games.cfg)}

    @app.get("/v1/game/{game_id}/state")
    def game_state(game_id: str):
        return {"state": snapshot(games.get(game_id), games.cfg)}

    if dashboard_dir is not None and Path(dashboard_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(dashboard_dir), html=True), name="dashboard")

    return app
