"""Kernel backend selection.

The compiled Cython kernels are used when importable. Setting
``PREMIA_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if _ckernels is not None and not os.environ.get("PREMIA_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

_impl = BACKENDS[BACKEND]
convolve_sorted = _impl.convolve_sorted
log_moment_shifted = _impl.log_moment_shifted
