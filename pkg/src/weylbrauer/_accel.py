"""Numba switch.

Set ``WEYLBRAUER_DISABLE_NUMBA=1`` to force the pure-numpy kernels (also used
automatically when numba is not importable).
"""

import os

_disabled = os.environ.get("WEYLBRAUER_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False


def use_numba() -> bool:
    return HAVE_NUMBA


def njit(func):
    if numba is None:
        return func
    return numba.njit(cache=True, nogil=True)(func)
