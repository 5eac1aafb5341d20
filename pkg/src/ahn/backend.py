"""Kernel backend selection.

At import time the compiled Cython kernels are preferred; if the extension
is missing (source checkout without a build) the pure NumPy fallback is used.
Set ``AHN_PURE_PYTHON=1`` in the environment to force the fallback. Both
backends are bitwise-identical, so the choice never changes results, only
speed.
"""

import os

from . import _kernels_py

_FORCE_PURE = os.environ.get("AHN_PURE_PYTHON", "").strip().lower() in ("1", "true", "yes")

if _FORCE_PURE:
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

nearest_center_labels = _impl.nearest_center_labels
polynomial_design = _impl.polynomial_design
design_predict = _impl.design_predict
piecewise_predict = _impl.piecewise_predict


def backend_name():
    """Name of the active kernel backend: ``"cython"`` or ``"python"``."""
    return BACKEND
