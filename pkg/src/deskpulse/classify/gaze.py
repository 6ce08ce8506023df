"""Gaze telemetry: fixation dwells and tracking-loss absences.

Gaze intentionally yields no emotion votes; eye position alone carries no
usable affect signal, so this modality contributes telemetry only (dwell
events and absence intervals for the daily report).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import kernels
from ..ingest.trace import GazeSample
from ..model import Point2


@dataclass(frozen=True)
class DwellEvent:
    """A maximal fixation run longer than the dwell threshold.

    Samples are admitted while they stay within the dwell radius of the
    running centroid of the samples admitted so far; ``centroid`` is the
    mean of all member samples.
    """

    start: int
    end: int
    centroid: Point2

    @property
    def duration_ms(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class AbsenceInterval:
    """A maximal run of unavailable gaze samples."""

    start: int
    end: int

    @property
    def duration_ms(self) -> int:
        return self.end - self.start


def detect_dwells(samples: Sequence[GazeSample], cfg) -> list[DwellEvent]:
    """Greedy left-to-right fixation detection over time-ordered samples."""
    if not samples:
        return []
    n = len(samples)
    ts = np.empty(n, dtype=np.int64)
    avail = np.empty(n, dtype=np.uint8)
    xs = np.zeros(n, dtype=np.float64)
    ys = np.zeros(n, dtype=np.float64)
    for i, s in enumerate(samples):
        ts[i] = s.ts
        avail[i] = 1 if s.available else 0
        if s.available:
            xs[i] = s.x
            ys[i] = s.y
    spans = kernels.dwell_spans(ts, avail, xs, ys, cfg.dwell_radius, cfg.dwell_ms)
    events = []
    for first, last in spans:
        sl = slice(int(first), int(last) + 1)
        events.append(
            DwellEvent(
                start=int(ts[first]),
                end=int(ts[last]),
                centroid=Point2(float(xs[sl].mean()), float(ys[sl].mean())),
            )
        )
    return events


def detect_absences(samples: Sequence[GazeSample]) -> list[AbsenceInterval]:
    """Maximal runs of available=false, in stream order."""
    intervals = []
    run_start = None
    last_ts = None
    for s in samples:
        if not s.available:
            if run_start is None:
                run_start = s.ts
            last_ts = s.ts
        elif run_start is not None:
            intervals.append(AbsenceInterval(run_start, last_ts))
            run_start = None
    if run_start is not None:
        intervals.append(AbsenceInterval(run_start, last_ts))
    return intervals
