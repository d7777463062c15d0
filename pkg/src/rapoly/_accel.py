"""Optional numba acceleration.

Kernels are written as plain Python over numpy arrays and wrapped with
:func:`njit`.  Setting ``RAP_NUMBA=0`` in the environment (or running without
numba installed) leaves them as ordinary Python functions.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

NUMBA_ENABLED = numba is not None and os.environ.get("RAP_NUMBA", "1") != "0"

NUMBA_OPTS = {"cache": True, "nogil": True}


def njit(func):
    """Compile ``func`` in nopython mode when acceleration is enabled."""
    if NUMBA_ENABLED:
        return numba.njit(**NUMBA_OPTS)(func)
    return func


def python_impl(func):
    """Return the uncompiled implementation behind a (possibly jitted) kernel."""
    return getattr(func, "py_func", func)
