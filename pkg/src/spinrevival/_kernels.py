"""Select the RK4 kernel at import.

Set ``SPINREVIVAL_PURE_PYTHON=1`` to force the numpy fallback.
"""
import os

from . import _rk4_py

BACKENDS = {"python": _rk4_py.rk4_propagate}

try:
    from ._rk4 import rk4_propagate as _compiled
except ImportError:  # extension not built
    _compiled = None
else:
    BACKENDS["cython"] = _compiled

if _compiled is not None and os.environ.get("SPINREVIVAL_PURE_PYTHON", "") in ("", "0"):
    BACKEND = "cython"
else:
    BACKEND = "python"

rk4_propagate = BACKENDS[BACKEND]


def get_kernel(name=None):
    if name is None:
        return rk4_propagate
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}") from None
