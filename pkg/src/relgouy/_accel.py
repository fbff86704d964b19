"""Backend selection for the hot kernels.

Set ``RELGOUY_DISABLE_NUMBA=1`` to force the pure-numpy path. The flag is read
once at import time.
"""

import os

_DISABLED = os.environ.get("RELGOUY_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    njit = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _DISABLED


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
