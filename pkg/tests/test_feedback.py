"""Questionnaire validation, response persistence, agreement, reports."""

import datetime as dt
import threading
from fractions import Fraction

import pytest

from deskpulse.errors import CapExceeded, EmptySession, ValidationError
from deskpulse.feedback.questionnaire import (
    EVAL_QUESTIONS,
    STATE_QUESTIONS,
    EvalResponse,
    EvalScale,
    StateResponse,
    load_state_options,
    summarize_eval,
)
from deskpulse.feedback.report import (
    RapFapAgreement,
    build_daily_report,
    report_to_dict,
    report_to_json,
    report_to_text,
    validate_rap,
)
from deskpulse.feedback.store import ResponseStore
from deskpulse.fusion import SessionSummary, summarize_session
from deskpulse.ingest.trace import WorkdayTrace
from deskpulse.model import EMOTIONS, Emotion
from deskpulse.pipeline import analyze_trace

DAY = dt.date(2024, 3, 4)


def state_response(ts=7_200_000, user="alice", emotions=(Emotion.HAPPY,)):
    return StateResponse(
        user_id=user,
        ts=ts,
        age_group="26-35",
        years_at_job="1-3",
        mental_health_rating="good",
        unhappiness_reasons=frozenset({"deadlines"}),
        satisfaction_reasons=frozenset({"team", "interesting work"}),
        emotions_experienced=frozenset(emotions),
        physical_feeling="fine",
    )


def eval_response(ts=1, user="alice", scale=EvalScale.VERY_EFFECTIVE):
    return EvalResponse(
        user_id=user,
        ts=ts,
        age_group="26-35",
        years_at_job="1-3",
        assessment_helped=scale,
        boosters_helped=scale,
        overall_effective=scale,
    )


def summary_for(emotion, count=10):
    rates = {e: Fraction(0) for e in EMOTIONS}
    rates[emotion] = Fraction(1)
    return SessionSummary(rates=rates, window_count=count)


class TestQuestionnaire:
    def test_question_inventories(self):
        assert len(STATE_QUESTIONS) == 7
        assert len(EVAL_QUESTIONS) == 5

    def test_emotion_options_are_the_seven_labels(self):
        options = load_state_options()
        assert set(options["emotions_experienced"]) == {e.value for e in Emotion}

    def test_unknown_emotion_rejected(self):
        with pytest.raises(ValidationError):
            state_response(emotions=("Bored",))

    def test_unknown_choice_rejected(self):
        with pytest.raises(ValidationError, match="age_group"):
            StateResponse(
                user_id="alice",
                ts=0,
                age_group="immortal",
                years_at_job="1-3",
                mental_health_rating="good",
            )

    def test_eval_scale_is_closed(self):
        with pytest.raises(ValidationError):
            EvalResponse(
                user_id="a",
                ts=0,
                age_group="26-35",
                years_at_job="1-3",
                assessment_helped="amazing",
                boosters_helped="very_effective",
                overall_effective="very_effective",
            )

    def test_string_emotions_coerced(self):
        resp = state_response(emotions=("Happy", "Surprise"))
        assert resp.emotions_experienced == {Emotion.HAPPY, Emotion.SURPRISE}


class TestResponseStore:
    def test_first_response_accepted(self, tmp_path):
        store = ResponseStore(tmp_path)
        assert store.record_state_response(state_response()) is True
        assert store.load_state_responses() == [state_response()]

    def test_round_trip_preserves_everything(self, tmp_path):
        store = ResponseStore(tmp_path)
        resp = state_response(emotions=(Emotion.HAPPY, Emotion.FEAR))
        store.record_state_response(resp)
        assert store.load_state_responses()[0] == resp

    def test_duplicate_is_idempotent(self, tmp_path):
        store = ResponseStore(tmp_path)
        assert store.record_state_response(state_response()) is True
        assert store.record_state_response(state_response()) is False
        assert len(store.load_state_responses()) == 1

    def test_third_response_capped(self, tmp_path):
        store = ResponseStore(tmp_path)
        store.record_state_response(state_response(ts=1_000))
        store.record_state_response(state_response(ts=2_000))
        with pytest.raises(CapExceeded):
            store.record_state_response(state_response(ts=3_000))

    def test_cap_under_concurrency(self, tmp_path):
        store = ResponseStore(tmp_path)
        outcomes = []

        def submit(ts):
            try:
                outcomes.append(store.record_state_response(state_response(ts=ts)))
            except CapExceeded:
                outcomes.append("capped")

        threads = [threading.Thread(target=submit, args=(1000 + i,)) for i in range(6)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(store.load_state_responses()) == 2
        assert outcomes.count(True) == 2

    def test_eval_round_trip(self, tmp_path):
        store = ResponseStore(tmp_path)
        resp = eval_response()
        assert store.record_eval_response(resp) is True
        assert store.load_eval_responses() == [resp]


class TestValidateRap:
    def test_membership(self):
        assert validate_rap(summary_for(Emotion.HAPPY), state_response(emotions=(Emotion.HAPPY, Emotion.SURPRISE)))

    def test_mismatch(self):
        assert not validate_rap(summary_for(Emotion.SAD), state_response(emotions=(Emotion.HAPPY,)))

    def test_tied_argmax_counts_if_any_reported(self):
        rates = {e: Fraction(0) for e in EMOTIONS}
        rates[Emotion.HAPPY] = Fraction(1, 2)
        rates[Emotion.NEUTRAL] = Fraction(1, 2)
        summary = SessionSummary(rates=rates, window_count=4)
        assert validate_rap(summary, state_response(emotions=(Emotion.NEUTRAL,)))

    def test_empty_session_raises(self):
        with pytest.raises(EmptySession):
            validate_rap(summarize_session([]), state_response())

    def test_agreement_rate_monotone(self):
        base = RapFapAgreement(sessions_compared=3, agreed=2)
        more_agree = RapFapAgreement(4, 3)
        more_disagree = RapFapAgreement(4, 2)
        assert more_agree.rate >= base.rate
        assert more_disagree.rate <= base.rate

    def test_zero_over_zero_is_undefined(self):
        assert RapFapAgreement(0, 0).rate is None


class TestEvalSummary:
    def test_counts(self):
        responses = [eval_response(ts=i, scale=EvalScale.VERY_EFFECTIVE) for i in range(3)]
        responses += [eval_response(ts=10 + i, scale=EvalScale.SOMEWHAT_EFFECTIVE) for i in range(2)]
        summary = summarize_eval(responses)
        counts = summary.counts["boosters_helped"]
        assert counts[EvalScale.NOT_EFFECTIVE] == 0
        assert counts[EvalScale.SOMEWHAT_EFFECTIVE] == 2
        assert counts[EvalScale.VERY_EFFECTIVE] == 3
        assert summary.none_not_effective is True

    def test_not_effective_clears_flag(self):
        summary = summarize_eval([eval_response(scale=EvalScale.NOT_EFFECTIVE)])
        assert summary.none_not_effective is False

    def test_empty(self):
        summary = summarize_eval([])
        assert summary.responses == 0
        assert all(
            n == 0 for by_scale in summary.counts.values() for n in by_scale.values()
        )


class TestDailyReport:
    def test_empty_trace_with_one_response(self, cfg):
        trace = WorkdayTrace(user_id="alice", date=DAY)
        analysis = analyze_trace(trace, cfg)
        report = build_daily_report(trace, analysis, [state_response()], cfg)
        assert report.keystrokes.total_keystrokes == 0
        assert report.agreement.sessions_compared == 0
        assert report.agreement.rate is None
        assert report.fap_emotions == {Emotion.HAPPY: 1}
        assert sum(report.bar_chart["rap"].values()) == 0
        assert report.bar_chart["fap"][Emotion.HAPPY] == 1

    def test_no_responses_gives_undefined_agreement(self, cfg):
        trace = WorkdayTrace(user_id="alice", date=DAY)
        analysis = analyze_trace(trace, cfg)
        report = build_daily_report(trace, analysis, [], cfg)
        d = report_to_dict(report)
        assert d["agreement"]["rate"] == "undefined"
        assert d["fap_emotions"] == {}

    def test_bar_chart_totals_match_series(self, cfg):
        from deskpulse.ingest import Persona, simulate_workday

        trace = simulate_workday(Persona.ENGAGED, 5, cfg)
        analysis = analyze_trace(trace, cfg)
        responses = [state_response(), state_response(ts=23_000_000, emotions=(Emotion.HAPPY, Emotion.SURPRISE))]
        report = build_daily_report(trace, analysis, responses, cfg)
        assert sum(report.bar_chart["rap"].values()) == len(analysis.fused)
        assert sum(report.bar_chart["fap"].values()) == 3

    def test_deterministic_serialization(self, cfg):
        trace = WorkdayTrace(user_id="alice", date=DAY)
        analysis = analyze_trace(trace, cfg)
        r1 = build_daily_report(trace, analysis, [state_response()], cfg)
        r2 = build_daily_report(trace, analysis, [state_response()], cfg)
        assert report_to_json(r1) == report_to_json(r2)
        assert report_to_text(r1) == report_to_text(r2)

    def test_golden_text_report(self, cfg):
        trace = WorkdayTrace(user_id="alice", date=DAY)
        analysis = analyze_trace(trace, cfg)
        report = build_daily_report(trace, analysis, [state_response()], cfg)
        text = report_to_text(report)
        assert text == GOLDEN_EMPTY_TRACE_REPORT


GOLDEN_EMPTY_TRACE_REPORT = """\
# daily affect report
user: alice
date: 2024-03-04

[keystrokes]
total_keystrokes: 0
words_per_minute: 0.0
typing_sessions: 0
mean_session_duration_s: 0.0
mean_gap_between_sessions_s: 0.0
low_productivity_flag: True

[interruptions]
breaks: 0
mean_break_duration_s: 0.0
total_locked_time_s: 0.0
disengagement_flag: False

[gaze]
dwell_count: 0
absence_total_seconds: 0.0

[predictions]
fused_windows: 0
rate Happy: 0/1
rate Sad: 0/1
rate Surprise: 0/1
rate Anger: 0/1
rate Fear: 0/1
rate Disgust: 0/1
rate Neutral: 0/1
session 1 windows: 0
session 2 windows: 0

[feedback]
reported Happy: 1
agreement: 0/0 (rate undefined)

[bar_chart]
rap Happy: 0
rap Sad: 0
rap Surprise: 0
rap Anger: 0
rap Fear: 0
rap Disgust: 0
rap Neutral: 0
fap Happy: 1
fap Sad: 0
fap Surprise: 0
fap Anger: 0
fap Fear: 0
fap Disgust: 0
fap Neutral: 0
"""
