"""Kernel selection: compiled Cython core when importable, pure Python otherwise.

Set ``LEFSCHETZ_LAB_PURE_PYTHON=1`` to force the fallback.
"""
import os

import numpy as np

from ._rank_py import rank_bigint

BACKEND = "python"
_rank_int64 = None

if not os.environ.get("LEFSCHETZ_LAB_PURE_PYTHON"):
    try:
        from ._rank import rank_int64 as _rank_int64

        BACKEND = "cython"
    except ImportError:
        _rank_int64 = None


def exact_rank(matrix, backend=None):
    """Exact rank over the rationals of an integer matrix.

    The compiled path works in int64 and promotes to Python integers on
    overflow, so the answer never depends on the backend.
    """
    a = np.asarray(matrix)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if a.size == 0:
        return 0
    if a.dtype.kind not in "iub" and a.dtype != object:
        raise TypeError(f"exact rank needs an integer matrix, got {a.dtype}")
    backend = backend or BACKEND
    if backend == "cython":
        if _rank_int64 is None:
            raise RuntimeError("compiled kernel is not available")
        if a.dtype != object:
            work = np.ascontiguousarray(a, dtype=np.int64).copy()
            try:
                return int(_rank_int64(work))
            except OverflowError:
                pass
    elif backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return rank_bigint(a.tolist())
