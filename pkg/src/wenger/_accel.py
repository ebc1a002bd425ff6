"""Backend selection for the hot kernels.

Every kernel ships twice: a loop version compiled with numba ``@njit`` and a
vectorized pure-numpy version.  The backend is picked from the environment
once at import time and can be flipped at runtime with :func:`set_backend`
(the test-suite and the benchmark do this to compare both paths).

``WENGER_BACKEND=numpy`` (or ``WENGER_DISABLE_NUMBA=1``) forces the numpy path.
"""

from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None


def _initial_backend() -> str:
    if os.environ.get("WENGER_DISABLE_NUMBA", "").lower() in ("1", "true", "yes"):
        return "numpy"
    name = os.environ.get("WENGER_BACKEND", "numba").lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"WENGER_BACKEND must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


_backend = _initial_backend()


def backend() -> str:
    return _backend


def set_backend(name: str) -> str:
    """Switch backend; returns the previous one."""
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    previous, _backend = _backend, name
    return previous


def njit(fn):
    """``numba.njit(cache=True)`` when numba is importable, else the plain function."""
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def dispatch(numba_impl, numpy_impl):
    """Return a callable that routes to the active backend on every call."""

    def call(*args):
        if _backend == "numba":
            return numba_impl(*args)
        return numpy_impl(*args)

    call.numba_impl = numba_impl
    call.numpy_impl = numpy_impl
    call.__name__ = getattr(numpy_impl, "__name__", "kernel").replace("_numpy", "")
    return call
