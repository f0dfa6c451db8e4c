"""Backend selection for the hot enumeration kernels.

Two interchangeable implementations exist: backend_numba (JIT kernels) and
backend_numpy (vectorized fallback).  QUATPAIRS_BACKEND=numba|numpy|auto
picks one; auto (the default) prefers numba when it imports cleanly.

Every kernel is deterministic and backend-agnostic in its results; the
callers feed identical pre-generated sample arrays to both.
"""

import os

_ENV = "QUATPAIRS_BACKEND"
_cached = None


def backend_name():
    return os.environ.get(_ENV, "auto").lower()


def get_backend(name=None):
    global _cached
    name = (name or backend_name()).lower()
    if name == "auto":
        if _cached is not None:
            return _cached
        try:
            from . import backend_numba as b

            b.warmup()
            _cached = b
        except Exception:
            from . import backend_numpy as b

            _cached = b
        return _cached
    if name == "numba":
        from . import backend_numba as b

        b.warmup()
        return b
    if name == "numpy":
        from . import backend_numpy as b

        return b
    raise ValueError(f"unknown backend {name!r} (want numba, numpy or auto)")
