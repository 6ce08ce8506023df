"""Kernel backend selection.

The compiled extension is preferred when present; set ``DESKPULSE_PURE=1``
to force the pure-Python backend. Both expose the same four functions with
identical semantics (``posture_codes``, ``face_codes``, ``window_majority``,
``dwell_spans``).
"""

import os

from . import pure

_impl = pure
if os.environ.get("DESKPULSE_PURE", "").strip().lower() not in ("1", "true", "yes"):
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = pure

BACKEND = _impl.BACKEND_NAME
DEGENERATE = pure.DEGENERATE

posture_codes = _impl.posture_codes
face_codes = _impl.face_codes
window_majority = _impl.window_majority
dwell_spans = _impl.dwell_spans


def available_backends():
    """Name -> module for every importable backend (for tests/benchmarks)."""
    backends = {"pure": pure}
    try:
        from . import _native

        backends["native"] = _native
    except ImportError:
        pass
    return backends
