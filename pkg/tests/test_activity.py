"""Keystroke/interruption statistics, threshold boundaries, and properties."""

import random

import pytest

from deskpulse.activity import interruption_stats, keystroke_stats, split_typing_sessions
from deskpulse.ingest.trace import KeyClass, KeystrokeEvent, SessionEvent, SessionKind
from deskpulse.model import RuleConfig


def keys(n, start=0, gap_ms=200, key_class=KeyClass.CHARACTER):
    return [KeystrokeEvent(start + i * gap_ms, key_class) for i in range(n)]


def lock_pairs(n, start=0, dur_ms=60_000, spacing_ms=600_000):
    events = []
    for i in range(n):
        t = start + i * spacing_ms
        events.append(SessionEvent(t, SessionKind.LOCKED))
        events.append(SessionEvent(t + dur_ms, SessionKind.UNLOCKED))
    return events


class TestKeystrokeThreshold:
    def test_5999_flags_low_productivity(self, cfg):
        report = keystroke_stats(keys(5999), cfg)
        assert report.total_keystrokes == 5999
        assert report.low_productivity_flag is True

    def test_6000_does_not_flag(self, cfg):
        report = keystroke_stats(keys(6000), cfg)
        assert report.total_keystrokes == 6000
        assert report.low_productivity_flag is False

    def test_empty_input(self, cfg):
        report = keystroke_stats([], cfg)
        assert report.total_keystrokes == 0
        assert report.words_per_minute == 0.0
        assert report.typing_sessions == 0
        assert report.low_productivity_flag is True

    def test_all_key_classes_count(self, cfg):
        events = (
            keys(10, 0, key_class=KeyClass.CHARACTER)
            + keys(5, 5000, key_class=KeyClass.NAVIGATION)
            + keys(3, 10_000, key_class=KeyClass.FUNCTION_CONTROL)
        )
        assert keystroke_stats(events, cfg).total_keystrokes == 18


class TestTypingSessions:
    def test_split_on_long_gap(self, cfg):
        events = keys(10, 0) + keys(10, 200_000)
        sessions = split_typing_sessions(events, cfg)
        assert len(sessions) == 2
        assert sessions[0] == (0, 1800)
        assert sessions[1] == (200_000, 201_800)

    def test_gap_at_threshold_does_not_split(self, cfg):
        # 60 s exactly is not "greater than" the typing gap
        events = [KeystrokeEvent(0, KeyClass.CHARACTER), KeystrokeEvent(60_000, KeyClass.CHARACTER)]
        assert len(split_typing_sessions(events, cfg)) == 1

    def test_wpm_formula(self, cfg):
        # 100 character keys over one 120 s session: (100/5) / 2 min = 10 wpm
        events = keys(100, 0, gap_ms=1212)  # spans 119,988 ms
        report = keystroke_stats(events, cfg)
        assert report.words_per_minute == pytest.approx(10.0, rel=0.01)

    def test_wpm_counts_characters_only(self, cfg):
        events = keys(50, 0, gap_ms=1000) + keys(
            50, 50_000, gap_ms=1000, key_class=KeyClass.NAVIGATION
        )
        report = keystroke_stats(events, cfg)
        # 50 chars / 5 = 10 words over the active span
        assert report.words_per_minute == pytest.approx(
            10.0 / (report.mean_session_duration * report.typing_sessions / 60.0)
        )

    def test_mean_gap(self, cfg):
        events = keys(5, 0) + keys(5, 500_000) + keys(5, 1_200_000)
        report = keystroke_stats(events, cfg)
        assert report.typing_sessions == 3
        gap1 = 500_000 - 800
        gap2 = 1_200_000 - 500_800
        assert report.mean_gap_between_sessions == pytest.approx(
            (gap1 + gap2) / 2 / 1000
        )

    def test_split_additivity_property(self, cfg):
        rng = random.Random(17)
        ts = sorted(rng.randrange(0, 3_600_000) for _ in range(500))
        events = [KeystrokeEvent(t, KeyClass.CHARACTER) for t in ts]
        total = keystroke_stats(events, cfg).total_keystrokes
        for _ in range(20):
            cut = rng.randrange(0, 3_600_000)
            left = [e for e in events if e.ts < cut]
            right = [e for e in events if e.ts >= cut]
            assert (
                keystroke_stats(left, cfg).total_keystrokes
                + keystroke_stats(right, cfg).total_keystrokes
                == total
            )


class TestBreaks:
    def test_ten_pairs_flag(self, cfg):
        report = interruption_stats(lock_pairs(10), cfg)
        assert report.breaks == 10
        assert report.disengagement_flag is True

    def test_nine_pairs_no_flag(self, cfg):
        report = interruption_stats(lock_pairs(9), cfg)
        assert report.breaks == 9
        assert report.disengagement_flag is False

    def test_trailing_lock_runs_to_workday_end(self, cfg):
        # Locked two hours in, never unlocked: break runs to the 8 h mark.
        events = [SessionEvent(2 * 3600 * 1000, SessionKind.LOCKED)]
        report = interruption_stats(events, cfg)
        assert report.breaks == 1
        assert report.total_locked_time == pytest.approx(6 * 3600)

    def test_breaks_equal_locked_count(self, cfg):
        rng = random.Random(3)
        for _ in range(20):
            n = rng.randrange(0, 14)
            events = lock_pairs(n)
            if rng.random() < 0.5 and n:
                events = events[:-1]  # drop final unlock
            report = interruption_stats(events, cfg)
            locked = sum(1 for e in events if e.kind == SessionKind.LOCKED)
            assert report.breaks == locked

    def test_durations(self, cfg):
        report = interruption_stats(lock_pairs(4, dur_ms=120_000), cfg)
        assert report.mean_break_duration == pytest.approx(120.0)
        assert report.total_locked_time == pytest.approx(480.0)

    def test_empty(self, cfg):
        report = interruption_stats([], cfg)
        assert report.breaks == 0
        assert report.disengagement_flag is False
        assert report.total_locked_time == 0.0


class TestFlagPurity:
    def test_flags_react_to_config_only(self):
        events = keys(500)
        strict = keystroke_stats(events, RuleConfig(keystroke_threshold=400))
        lax = keystroke_stats(events, RuleConfig(keystroke_threshold=600))
        assert strict.total_keystrokes == lax.total_keystrokes == 500
        assert strict.low_productivity_flag is False
        assert lax.low_productivity_flag is True

    def test_break_flag_react_to_config_only(self):
        events = lock_pairs(5)
        a = interruption_stats(events, RuleConfig(break_threshold=5))
        b = interruption_stats(events, RuleConfig(break_threshold=6))
        assert a.breaks == b.breaks == 5
        assert a.disengagement_flag is True
        assert b.disengagement_flag is False
