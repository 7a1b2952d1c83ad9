"""Numba switch.

Set ``EXCLGRAPH_DISABLE_JIT=1`` to run every kernel as plain Python over
numpy arrays. The flag is read once, at import time.
"""

import os

_FLAG = os.environ.get("EXCLGRAPH_DISABLE_JIT", "").strip().lower()
JIT_ENABLED = _FLAG not in ("1", "true", "yes", "on")

if JIT_ENABLED:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        JIT_ENABLED = False


def njit(fn):
    if JIT_ENABLED:
        return numba.njit(cache=True)(fn)
    return fn


def py_func(fn):
    """Return the uncompiled Python body of a kernel."""
    return getattr(fn, "py_func", fn)
