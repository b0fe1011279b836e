"""JIT switch shared by every kernel module.

Kernels are written once in the numba-compatible subset of Python.  With
numba available (and ``DSPATHS_DISABLE_NUMBA`` unset) they are compiled with
``njit``; otherwise the very same functions run as plain Python over numpy
arrays.  The fallback is slow but bit-identical, which is what the backend
benchmark and the backend equivalence tests rely on.
"""
import os

_DISABLED_VALUES = {"1", "true", "yes", "on"}

NUMBA_DISABLED = os.environ.get("DSPATHS_DISABLE_NUMBA", "").strip().lower() in _DISABLED_VALUES

try:
    if NUMBA_DISABLED:
        raise ImportError
    import numba as _numba
except ImportError:
    _numba = None

USING_NUMBA = _numba is not None


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, identity decorator otherwise."""
    if _numba is None:
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return _numba.njit(*args, **kwargs)


def backend_name():
    return "numba" if USING_NUMBA else "python"
