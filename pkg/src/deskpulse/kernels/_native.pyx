# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native kernel backend. Mirrors kernels/pure.py exactly; see that module
for layout and semantics. Parity between the two backends is enforced by
tests.
"""

from libc.math cimport fabs, hypot

import numpy as np

BACKEND_NAME = "native"

DEGENERATE = 255

cdef int _HEAD = 0, _SHOULDER_C = 1, _SHOULDER_L = 2, _SHOULDER_R = 3, _SPINE = 4
cdef int _ELBOW_L = 8, _ELBOW_R = 9, _WRIST_L = 10, _WRIST_R = 11
cdef int _ULIP_L = 2, _ULIP_R = 4, _LLIP_L = 5, _LLIP_R = 7
cdef int _EYE_UP_L = 8, _EYE_LO_L = 9, _EYE_UP_R = 10, _EYE_LO_R = 11
cdef int _CHEEK_L = 12, _CHEEK_R = 13


def posture_codes(joints, double r_head, double w_front, double tilt_thresh):
    cdef double[:, :, ::1] j = np.ascontiguousarray(joints, dtype=np.float64)
    cdef Py_ssize_t n = j.shape[0]
    out_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double hx, hy, wlx, wly, wrx, wry, elx, ely, erx, ery, sly, sry, spx
    for i in range(n):
        hx = j[i, _HEAD, 0]
        hy = j[i, _HEAD, 1]
        wlx = j[i, _WRIST_L, 0]
        wly = j[i, _WRIST_L, 1]
        wrx = j[i, _WRIST_R, 0]
        wry = j[i, _WRIST_R, 1]
        elx = j[i, _ELBOW_L, 0]
        ely = j[i, _ELBOW_L, 1]
        erx = j[i, _ELBOW_R, 0]
        ery = j[i, _ELBOW_R, 1]
        sly = j[i, _SHOULDER_L, 1]
        sry = j[i, _SHOULDER_R, 1]
        if (hypot(wlx - hx, wly - hy) <= r_head
                and hypot(wrx - hx, wry - hy) <= r_head
                and ely > sly and ery > sry):
            out[i] = 1
            continue
        if wly < ely and wry < ery and fabs(hx - j[i, _SHOULDER_C, 0]) > tilt_thresh:
            out[i] = 3
            continue
        spx = j[i, _SPINE, 0]
        if (ely < wly and wly < sly and ery < wry and wry < sry
                and fabs(wlx - spx) <= w_front and fabs(wrx - spx) <= w_front):
            out[i] = 2
    return out_arr


def face_codes(points, double t_lip, double t_eye, double d_cheek):
    cdef double[:, :, ::1] p = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t n = p.shape[0]
    out_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double clx, cly, crx, cry, width, eye_gap, cheek_gap, span, span2
    cdef bint left, right
    for i in range(n):
        clx = p[i, _CHEEK_L, 0]
        cly = p[i, _CHEEK_L, 1]
        crx = p[i, _CHEEK_R, 0]
        cry = p[i, _CHEEK_R, 1]
        width = hypot(clx - crx, cly - cry)
        if width == 0.0:
            out[i] = DEGENERATE
            continue
        eye_gap = t_eye * width
        cheek_gap = d_cheek * width
        left = (fabs(p[i, _EYE_UP_L, 1] - p[i, _EYE_LO_L, 1]) < eye_gap
                and hypot(clx - p[i, _EYE_LO_L, 0], cly - p[i, _EYE_LO_L, 1]) < cheek_gap)
        right = (fabs(p[i, _EYE_UP_R, 1] - p[i, _EYE_LO_R, 1]) < eye_gap
                 and hypot(crx - p[i, _EYE_LO_R, 0], cry - p[i, _EYE_LO_R, 1]) < cheek_gap)
        if left or right:
            out[i] = 4
            continue
        span = fabs(p[i, _ULIP_L, 0] - p[i, _ULIP_R, 0])
        span2 = fabs(p[i, _LLIP_L, 0] - p[i, _LLIP_R, 0])
        if span2 > span:
            span = span2
        if span > t_lip * width:
            out[i] = 5
    return out_arr


def window_majority(emotion_ids, int window_len, int frame_majority, int neutral_id):
    cdef unsigned char[::1] ids = np.ascontiguousarray(emotion_ids, dtype=np.uint8)
    cdef Py_ssize_t n_windows = ids.shape[0] // window_len
    out_arr = np.empty(n_windows, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t w, i, base
    cdef int k, best, best_count
    cdef bint tied
    cdef int counts[8]
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
    return out_arr


def dwell_spans(ts, avail, xs, ys, double radius, double min_dur_ms):
    cdef long long[::1] t = np.ascontiguousarray(ts, dtype=np.int64)
    cdef unsigned char[::1] a = np.ascontiguousarray(avail, dtype=np.uint8)
    cdef double[::1] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] y = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = t.shape[0]
    spans = []
    cdef Py_ssize_t i, first = -1, last = -1
    cdef double sx = 0.0, sy = 0.0
    cdef Py_ssize_t count = 0
    for i in range(n):
        if not a[i]:
            if count > 0 and t[last] - t[first] > min_dur_ms:
                spans.append((first, last))
            first = last = -1
            sx = sy = 0.0
            count = 0
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
            if t[last] - t[first] > min_dur_ms:
                spans.append((first, last))
            first = last = i
            sx = x[i]
            sy = y[i]
            count = 1
    if count > 0 and t[last] - t[first] > min_dur_ms:
        spans.append((first, last))
    return np.array(spans, dtype=np.int64).reshape(-1, 2)
