"""Backend selection for the subset-hafnian kernels.

The compiled extension ``_kernels`` is used when it imports and the numbers
fit in int64; otherwise the pure-Python twin in ``_kernels_py`` runs. Set
``GBSDUAL_PURE_PYTHON=1`` to force the fallback for the whole process, or
pass ``backend="python"`` to a single call.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction

import numpy as np

from . import _kernels_py
from .errors import SizeLimitError

try:
    if os.environ.get("GBSDUAL_PURE_PYTHON"):
        raise ImportError("pure Python backend forced by GBSDUAL_PURE_PYTHON")
    from . import _kernels as _ext
except ImportError:
    _ext = None

BACKEND = "cython" if _ext is not None else "python"

# 2**24 table entries is the largest subset table we build (128 MiB as int64).
TABLE_LIMIT = 24
GRADED_LIMIT = 18
_INT64_SAFE = 1 << 62


def _use_ext(backend):
    if backend is None:
        return _ext is not None
    if backend == "cython":
        if _ext is None:
            raise RuntimeError("compiled kernels are not available in this build")
        return True
    if backend == "python":
        return False
    raise ValueError(f"unknown backend {backend!r}")


def _integerize(rows):
    """Scale a rational matrix to integers; return ``(int_rows, scale)``."""
    scale = 1
    for r in rows:
        for v in r:
            if isinstance(v, Fraction):
                scale = math.lcm(scale, v.denominator)
    if scale == 1:
        return [[int(v) for v in r] for r in rows], 1
    return [[int(v * scale) for v in r] for r in rows], scale


def _int64_table(irows):
    if not irows:
        return np.ones(1, dtype=np.int64)
    if any(abs(v) >= _INT64_SAFE for r in irows for v in r):
        return None
    try:
        return _ext.subset_hafnians_int(np.ascontiguousarray(irows, dtype=np.int64))
    except OverflowError:
        return None


def subset_hafnians(rows, backend=None):
    """Exact hafnians of every principal submatrix.

    ``result[mask]`` is the hafnian of ``rows`` restricted to the indices set
    in ``mask`` (``int`` or ``Fraction``). Odd masks hold 0.
    """
    k = len(rows)
    if k > TABLE_LIMIT:
        raise SizeLimitError(f"subset table for {k} vertices exceeds 2**{TABLE_LIMIT} entries")
    irows, scale = _integerize(rows)
    table = None
    if _use_ext(backend):
        arr = _int64_table(irows)
        if arr is not None:
            table = arr.tolist()
    if table is None:
        table = _kernels_py.subset_hafnians(irows)
    if scale != 1:
        table = [
            Fraction(v, scale ** (bin(mask).count("1") // 2)) if v else 0
            for mask, v in enumerate(table)
        ]
    return table


def graded_hafnian_sums(rows, backend=None):
    """``out[mask][s]`` = sum of ``haf(A_T)`` over ``T`` within ``mask`` with ``|T| = s``.

    Row ``mask`` therefore lists the coefficients of the signless matching
    polynomial of the subgraph induced by ``mask``: ``out[mask][s]`` goes with
    ``z**(|mask| - s)``.
    """
    k = len(rows)
    if k > GRADED_LIMIT:
        raise SizeLimitError(f"graded subset sums for {k} vertices exceed the limit {GRADED_LIMIT}")
    irows, scale = _integerize(rows)
    out = None
    if _use_ext(backend):
        arr = _int64_table(irows)
        if arr is not None:
            try:
                out = _ext.graded_subset_sums_int(arr, k).tolist()
            except OverflowError:
                out = None
    if out is None:
        out = _kernels_py.graded_subset_sums(_kernels_py.subset_hafnians(irows), k)
    if scale != 1:
        div = [scale ** (s // 2) for s in range(k + 1)]
        out = [[Fraction(v, div[s]) if v else 0 for s, v in enumerate(row)] for row in out]
    return out


def subset_hafnians_float(matrix, backend=None):
    """Float64 hafnians of every principal submatrix of ``matrix``."""
    a = np.ascontiguousarray(matrix, dtype=np.float64)
    k = a.shape[0]
    if k > TABLE_LIMIT:
        raise SizeLimitError(f"subset table for {k} vertices exceeds 2**{TABLE_LIMIT} entries")
    if k == 0:
        return np.ones(1)
    if _use_ext(backend):
        return _ext.subset_hafnians_float(a)
    return np.asarray(_kernels_py.subset_hafnians(a.tolist()), dtype=np.float64)


def hafnian_float(matrix, backend=None):
    """Float hafnian of a single real symmetric matrix (diagonal ignored)."""
    a = np.asarray(matrix, dtype=np.float64)
    if a.shape[0] % 2:
        return 0.0
    return float(subset_hafnians_float(a, backend=backend)[-1])
