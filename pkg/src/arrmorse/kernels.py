"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set ``ARRMORSE_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py as fallback

compiled = None
if os.environ.get("ARRMORSE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled  # type: ignore[attr-defined]
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else fallback
BACKEND = "cython" if compiled is not None else "numpy"

face_leq_matrix = _impl.face_leq_matrix
compose_rows = _impl.compose_rows
separation_counts = _impl.separation_counts
