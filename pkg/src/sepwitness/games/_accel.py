"""numba toggle for the dense game kernels.

Kernels in :mod:`kernels` are written as plain loops over small complex
arrays so the same source runs compiled or interpreted.  Set
``SEPWITNESS_NO_NUMBA=1`` to force the interpreted numpy path; it is also
used automatically when numba is not installed.
"""

import os

DISABLE_ENV = "SEPWITNESS_NO_NUMBA"


def _numba_available() -> bool:
    if os.environ.get(DISABLE_ENV, "").strip() not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _numba_available()

if NUMBA_ENABLED:
    from numba import njit
else:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


def accelerated() -> bool:
    """True when the kernels run under numba."""
    return NUMBA_ENABLED
