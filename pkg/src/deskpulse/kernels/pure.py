"""Pure-Python kernel backend.

Reference implementations of the hot per-frame loops. The native Cython
backend in ``_native.pyx`` mirrors these exactly; parity is enforced by
tests. Array layouts:

* joints:  float64 (n, 12, 2), rows in ``model.JOINTS`` order
* faces:   float64 (n, 18, 2), rows in ``model.FACE_POINTS`` order
* codes:   uint8, 0 = no rule, 1..5 = fired rule id

Rule priority is fixed: posture 1 > 3 > 2, face 4 > 5.
"""

from math import hypot

import numpy as np

BACKEND_NAME = "pure"

# Joint row indices (see model.JOINTS).
_HEAD = 0
_SHOULDER_C = 1
_SHOULDER_L = 2
_SHOULDER_R = 3
_SPINE = 4
_ELBOW_L = 8
_ELBOW_R = 9
_WRIST_L = 10
_WRIST_R = 11

# Face point row indices (see model.FACE_POINTS).
_ULIP_L = 2
_ULIP_R = 4
_LLIP_L = 5
_LLIP_R = 7
_EYE_UP_L = 8
_EYE_LO_L = 9
_EYE_UP_R = 10
_EYE_LO_R = 11
_CHEEK_L = 12
_CHEEK_R = 13

#: Sentinel emitted for a zero-width face; wrappers convert it to an error.
DEGENERATE = 255


def posture_codes(joints, r_head, w_front, tilt_thresh):
    """Classify each skeleton frame into a posture rule code (0/1/2/3)."""
    j = np.asarray(joints, dtype=np.float64)
    n = j.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        f = j[i]
        hx, hy = f[_HEAD]
        wlx, wly = f[_WRIST_L]
        wrx, wry = f[_WRIST_R]
        elx, ely = f[_ELBOW_L]
        erx, ery = f[_ELBOW_R]
        sly = f[_SHOULDER_L][1]
        sry = f[_SHOULDER_R][1]
        # Rule 1: both wrists near the head, both elbows above the shoulders.
        if (
            hypot(wlx - hx, wly - hy) <= r_head
            and hypot(wrx - hx, wry - hy) <= r_head
            and ely > sly
            and ery > sry
        ):
            out[i] = 1
            continue
        # Rule 3: both wrists below the elbows, head tilted off shoulder center.
        if wly < ely and wry < ery and abs(hx - f[_SHOULDER_C][0]) > tilt_thresh:
            out[i] = 3
            continue
        # Rule 2: per side elbow < wrist < shoulder, wrists in front of the spine.
        spx = f[_SPINE][0]
        if (
            ely < wly < sly
            and ery < wry < sry
            and abs(wlx - spx) <= w_front
            and abs(wrx - spx) <= w_front
        ):
            out[i] = 2
    return out


def face_codes(points, t_lip, t_eye, d_cheek):
    """Classify each face frame into a face rule code (0/4/5).

    Thresholds are fractions of the per-frame cheek-to-cheek width.
    A zero-width frame yields the DEGENERATE sentinel.
    """
    p = np.asarray(points, dtype=np.float64)
    n = p.shape[0]
    out = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        f = p[i]
        clx, cly = f[_CHEEK_L]
        crx, cry = f[_CHEEK_R]
        width = hypot(clx - crx, cly - cry)
        if width == 0.0:
            out[i] = DEGENERATE
            continue
        # Rule 4: on either eye, a narrow lid gap with the cheek pulled close.
        eye_gap = t_eye * width
        cheek_gap = d_cheek * width
        left = abs(f[_EYE_UP_L][1] - f[_EYE_LO_L][1]) < eye_gap and (
            hypot(clx - f[_EYE_LO_L][0], cly - f[_EYE_LO_L][1]) < cheek_gap
        )
        right = abs(f[_EYE_UP_R][1] - f[_EYE_LO_R][1]) < eye_gap and (
            hypot(crx - f[_EYE_LO_R][0], cry - f[_EYE_LO_R][1]) < cheek_gap
        )
        if left or right:
            out[i] = 4
            continue
        # Rule 5: lip corners spread wider than the smile threshold.
        span = max(
            abs(f[_ULIP_L][0] - f[_ULIP_R][0]),
            abs(f[_LLIP_L][0] - f[_LLIP_R][0]),
        )
        if span > t_lip * width:
            out[i] = 5
    return out


def window_majority(emotion_ids, window_len, frame_majority, neutral_id):
    """Reduce per-frame emotion ids to one id per non-overlapping window.

    A window keeps its most frequent emotion only when that emotion is
    unique and reaches ``frame_majority`` frames; otherwise the window is
    neutral. The trailing partial window is dropped.
    """
    ids = np.asarray(emotion_ids, dtype=np.uint8)
    n_windows = len(ids) // window_len
    out = np.empty(n_windows, dtype=np.uint8)
    counts = [0] * 8
    for w in range(n_windows):
        for k in range(8):
            counts[k] = 0
        base = w * window_len
        for i in range(base, base + window_len):
            counts[ids[i]] += 1
        best = 0
        best_count = -1
        tied = False
        for k in range(8):
            if counts[k] > best_count:
                best = k
                best_count = counts[k]
                tied = False
            elif counts[k] == best_count:
                tied = True
        if tied or best_count < frame_majority:
            out[w] = neutral_id
        else:
            out[w] = best
    return out


def dwell_spans(ts, avail, xs, ys, radius, min_dur_ms):
    """Find maximal gaze fixation runs longer than ``min_dur_ms``.

    Greedy left-to-right: a run admits the next available sample while it
    stays within ``radius`` of the running centroid of the samples admitted
    so far; any break (radius or availability) closes the run and the
    breaking sample starts the next one. Returns an (m, 2) int64 array of
    inclusive (first, last) sample index pairs.
    """
    t = np.asarray(ts, dtype=np.int64)
    a = np.asarray(avail, dtype=np.uint8)
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    n = len(t)
    spans = []
    first = -1
    last = -1
    sx = 0.0
    sy = 0.0
    count = 0

    def close():
        nonlocal first, last, sx, sy, count
        if count > 0 and t[last] - t[first] > min_dur_ms:
            spans.append((first, last))
        first = last = -1
        sx = sy = 0.0
        count = 0

    for i in range(n):
        if not a[i]:
            close()
            continue
        if count == 0:
            first = last = i
            sx = x[i]
            sy = y[i]
            count = 1
            continue
        if hypot(x[i] - sx / count, y[i] - sy / count) <= radius:
            last = i
            sx += x[i]
            sy += y[i]
            count += 1
        else:
            close()
            first = last = i
            sx = x[i]
            sy = y[i]
            count = 1
    close()
    return np.array(spans, dtype=np.int64).reshape(-1, 2)
