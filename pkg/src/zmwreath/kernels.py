"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``ZMW_PURE_PYTHON=1`` to force the fallback. ``BACKEND`` names the
active implementation.
"""

import os

from . import _pykernels

if os.environ.get("ZMW_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

cycle_type_counts = _impl.cycle_type_counts
ewens_batch = _impl.ewens_batch

__all__ = ["BACKEND", "cycle_type_counts", "ewens_batch"]
