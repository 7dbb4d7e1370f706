"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; set
``HYPERRANK_PURE_PYTHON=1`` to force the NumPy/bisect fallback. Both
backends produce identical results; the compiled one is just faster.
"""

import os

from . import _pykernels

if os.environ.get("HYPERRANK_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

csr_left_multiply = _impl.csr_left_multiply
walk_steps = _impl.walk_steps

__all__ = ["BACKEND", "csr_left_multiply", "walk_steps"]
