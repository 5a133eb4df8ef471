"""Kernel backend selection.

The compiled ``_core`` extension is used when it imports and the degree fits
its packed keys; otherwise the pure-Python ``_pycore`` module is used.
Setting ``PALINWIDTH_PURE=1`` forces the fallback.
"""

import os

from palinwidth import _pycore

try:
    if os.environ.get("PALINWIDTH_PURE", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced")
    from palinwidth import _core
except ImportError:
    _core = None

COMPILED = _core is not None


def backend_for(degree, prefer=None):
    """Return the kernel module for a table of the given degree.

    ``prefer`` may be ``"cython"`` or ``"python"`` to pin a backend.
    """
    if prefer == "python":
        return _pycore
    if prefer == "cython":
        if _core is None:
            raise RuntimeError("compiled kernels are not available")
        if degree > _core.MAX_DEGREE:
            raise ValueError(f"compiled kernels support degree <= {_core.MAX_DEGREE}")
        return _core
    if _core is not None and degree <= _core.MAX_DEGREE:
        return _core
    return _pycore


def backend_name(module):
    return "cython" if module is _core and _core is not None else "python"
