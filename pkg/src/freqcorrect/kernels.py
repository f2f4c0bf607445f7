"""Backend selection for the tally kernels.

The Cython extension is preferred; set ``FREQCORRECT_PURE=1`` to force the
numpy fallback. ``BACKEND`` names whichever one was loaded.
"""
import os

import numpy as np

from . import _fallback

if os.environ.get("FREQCORRECT_PURE"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _fallback
        BACKEND = "python"
    else:
        BACKEND = "cython"


def as_profile(rows, m: int | None = None) -> np.ndarray:
    """Coerce rankings to the C-contiguous int32 layout the kernels expect."""
    arr = np.ascontiguousarray(rows, dtype=np.int32)
    if arr.ndim != 2:
        arr = arr.reshape(-1, m)
    return arr


def tally(profile: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    return _impl.tally(as_profile(profile, m), m)


def nice_flags(profile: np.ndarray, m: int) -> np.ndarray:
    return _impl.nice_flags(as_profile(profile, m), m)
