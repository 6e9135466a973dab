"""Backend selection for the hot summation kernels.

The compiled extension is used when it imports; otherwise the pure-Python
reference kernels are used. Set ``IGAMMA_PURE_PYTHON=1`` to force the
fallback.
"""

import os

from . import _kernels_py

if os.environ.get("IGAMMA_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

falling = _impl.falling
tail_moments = _impl.tail_moments
lower_moments = _impl.lower_moments
segment_moments = _impl.segment_moments
asymptotic_sum = _impl.asymptotic_sum
segments = _impl.segments

__all__ = [
    "BACKEND",
    "falling",
    "tail_moments",
    "lower_moments",
    "segment_moments",
    "asymptotic_sum",
    "segments",
]
