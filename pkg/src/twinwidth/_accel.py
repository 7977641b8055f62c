"""Backend selection for the bitset kernels.

Set ``TWINWIDTH_NO_NUMBA=1`` to force the pure-numpy code path. The flag is
read once, at import time.
"""

import os

try:
    import numba as nb
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    nb = None

_FLAG = "TWINWIDTH_NO_NUMBA"

USE_NUMBA = nb is not None and os.environ.get(_FLAG, "").strip().lower() in ("", "0", "false", "no")


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, otherwise an identity decorator."""
    if nb is None:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return nb.njit(*args, **kwargs)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
