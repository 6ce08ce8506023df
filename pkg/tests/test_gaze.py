"""Dwell and absence detection against brute-force oracles."""

import random

from deskpulse.classify.gaze import detect_absences, detect_dwells
from deskpulse.ingest.trace import GazeSample
from deskpulse.model import RuleConfig

from .oracles import absence_oracle, dwell_oracle


def fixation(start_ms, count, x, y, period_ms=500):
    return [
        GazeSample(start_ms + i * period_ms, True, x, y) for i in range(count)
    ]


def test_six_second_fixation_is_one_dwell(cfg):
    samples = fixation(0, 13, 0.5, 0.5)  # spans exactly 6.0 s
    events = detect_dwells(samples, cfg)
    assert len(events) == 1
    assert events[0].start == 0 and events[0].end == 6000
    assert events[0].duration_ms == 6000
    assert abs(events[0].centroid.x - 0.5) < 1e-9


def test_under_threshold_fixation_is_nothing(cfg):
    samples = fixation(0, 8, 0.5, 0.5, period_ms=700)  # spans 4.9 s
    assert detect_dwells(samples, cfg) == []


def test_exactly_threshold_excluded(cfg):
    samples = fixation(0, 11, 0.5, 0.5)  # spans exactly 5.0 s; must be > 5 s
    assert detect_dwells(samples, cfg) == []


def test_two_fixations_with_saccade(cfg):
    samples = (
        fixation(0, 13, 0.2, 0.2)
        + [GazeSample(6500, True, 0.55, 0.55)]
        + fixation(7000, 14, 0.8, 0.8)
    )
    events = detect_dwells(samples, cfg)
    assert len(events) == 2
    assert events[0].start == 0 and events[0].end == 6000
    assert events[1].start == 7000 and events[1].end == 13500


def test_unavailable_breaks_dwell(cfg):
    samples = fixation(0, 7, 0.4, 0.4) + [GazeSample(3500, False)] + fixation(
        4000, 7, 0.4, 0.4
    )
    assert detect_dwells(samples, cfg) == []


def test_dwell_events_never_overlap_and_respect_duration(cfg):
    rng = random.Random(4)
    samples = []
    ts = 0
    for _ in range(400):
        ts += rng.choice([250, 500, 1000])
        if rng.random() < 0.1:
            samples.append(GazeSample(ts, False))
        else:
            samples.append(
                GazeSample(ts, True, round(rng.random(), 3), round(rng.random(), 3))
            )
    events = detect_dwells(samples, cfg)
    for a, b in zip(events, events[1:]):
        assert a.end < b.start
    for e in events:
        assert e.duration_ms > cfg.dwell_ms


def test_brute_force_oracle_equivalence(cfg):
    for seed in range(200):
        rng = random.Random(seed)
        n = rng.randint(0, 200)
        samples = []
        ts = 0
        # Cluster-heavy generator so real dwells occur.
        cx, cy = rng.random(), rng.random()
        for _ in range(n):
            ts += rng.choice([400, 500, 600, 1500])
            if rng.random() < 0.12:
                samples.append(GazeSample(ts, False))
                continue
            if rng.random() < 0.15:
                cx, cy = rng.random(), rng.random()
            x = min(1.0, max(0.0, cx + rng.uniform(-0.02, 0.02)))
            y = min(1.0, max(0.0, cy + rng.uniform(-0.02, 0.02)))
            samples.append(GazeSample(ts, True, x, y))
        got = detect_dwells(samples, cfg)
        expected = dwell_oracle(samples, cfg.dwell_radius, cfg.dwell_ms)
        assert [(e.start, e.end) for e in got] == [
            (samples[i].ts, samples[j].ts) for i, j in expected
        ], f"seed {seed}"


def test_all_available_no_absence(cfg):
    assert detect_absences(fixation(0, 20, 0.3, 0.3)) == []


def test_long_absence_run(cfg):
    samples = [GazeSample(i * 1000, False) for i in range(121)]
    intervals = detect_absences(samples)
    assert len(intervals) == 1
    assert intervals[0].duration_ms == 120_000


def test_alternating_availability(cfg):
    samples = []
    for i in range(20):
        if i % 2 == 0:
            samples.append(GazeSample(i * 1000, True, 0.5, 0.5))
        else:
            samples.append(GazeSample(i * 1000, False))
    intervals = detect_absences(samples)
    assert len(intervals) == 10
    assert all(iv.duration_ms == 0 for iv in intervals)


def test_absence_oracle_equivalence(cfg):
    rng = random.Random(11)
    for _ in range(100):
        samples = []
        for i in range(rng.randint(0, 120)):
            if rng.random() < 0.4:
                samples.append(GazeSample(i * 500, False))
            else:
                samples.append(GazeSample(i * 500, True, 0.5, 0.5))
        got = [(a.start, a.end) for a in detect_absences(samples)]
        assert got == absence_oracle(samples)


def test_dwell_respects_radius_config():
    wide = RuleConfig(dwell_radius=0.5)
    samples = [
        GazeSample(i * 1000, True, 0.3 + 0.02 * (i % 5), 0.3) for i in range(10)
    ]
    assert len(detect_dwells(samples, wide)) == 1
