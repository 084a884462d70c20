"""Hot numeric kernels: B-spline design matrices and pairwise AUC.

Each kernel exists twice: a numba ``@njit`` version and a vectorized
pure-numpy version. The active path is chosen at import time; set the
environment variable ``FPCLOGIT_NO_NUMBA=1`` to force the numpy path
(the numpy path is also used automatically when numba is missing).
``bench/bench_kernels.py`` times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np


def _want_numba() -> bool:
    if os.environ.get("FPCLOGIT_NO_NUMBA", "").strip().lower() in {"1", "true", "yes"}:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _want_numba()


def bspline_design_numpy(t: np.ndarray, knots: np.ndarray, degree: int) -> np.ndarray:
    """Cox-de Boor recurrence vectorized over all evaluation points.

    ``knots`` is the full clamped knot vector (length nbasis + degree + 1).
    Returns the (len(t), nbasis) matrix of basis values; the right endpoint
    is evaluated as the left limit (last nonempty span is closed).
    """
    t = np.ascontiguousarray(t, dtype=np.float64)
    m = t.shape[0]
    nk = knots.shape[0]
    tmax = knots[-1]
    vals = np.zeros((m, nk - 1))
    for j in range(nk - 1):
        lo, hi = knots[j], knots[j + 1]
        if hi > lo:
            inside = (t >= lo) & (t < hi)
            if hi == tmax:
                inside |= t == tmax
            vals[:, j] = inside
    for k in range(1, degree + 1):
        prev = vals
        vals = np.zeros((m, nk - 1 - k))
        for j in range(nk - 1 - k):
            d1 = knots[j + k] - knots[j]
            d2 = knots[j + k + 1] - knots[j + 1]
            if d1 > 0.0:
                vals[:, j] += (t - knots[j]) / d1 * prev[:, j]
            if d2 > 0.0:
                vals[:, j] += (knots[j + k + 1] - t) / d2 * prev[:, j + 1]
    return vals


def _bspline_design_loop(t, knots, degree, out):
    # Span-based Cox-de Boor: only the degree+1 nonzero functions per point.
    nbasis = out.shape[1]
    left = np.empty(degree + 1)
    right = np.empty(degree + 1)
    vals = np.empty(degree + 1)
    for idx in range(t.shape[0]):
        x = t[idx]
        if x >= knots[nbasis]:
            span = nbasis - 1
        else:
            span = np.searchsorted(knots, x, side="right") - 1
            if span < degree:
                span = degree
            elif span > nbasis - 1:
                span = nbasis - 1
        vals[0] = 1.0
        for j in range(1, degree + 1):
            left[j] = x - knots[span + 1 - j]
            right[j] = knots[span + j] - x
            saved = 0.0
            for r in range(j):
                temp = vals[r] / (right[r + 1] + left[j - r])
                vals[r] = saved + right[r + 1] * temp
                saved = left[j - r] * temp
            vals[j] = saved
        for j in range(degree + 1):
            out[idx, span - degree + j] = vals[j]
    return out


def auc_pairwise_numpy(pos: np.ndarray, neg: np.ndarray) -> float:
    """Mann-Whitney AUC over all positive-negative pairs, ties counted 1/2."""
    pos = np.asarray(pos, dtype=np.float64)
    neg = np.asarray(neg, dtype=np.float64)
    total = 0.0
    # chunk the broadcast so memory stays bounded for large inputs
    chunk = max(1, int(4_000_000 // max(1, neg.size)))
    for start in range(0, pos.size, chunk):
        block = pos[start : start + chunk, None]
        total += (block > neg[None, :]).sum() + 0.5 * (block == neg[None, :]).sum()
    return total / (pos.size * neg.size)


def _auc_pairwise_loop(pos, neg_sorted):
    # counts per positive via binary search over the sorted negatives:
    # identical to enumerating all pairs with ties worth one half
    total = 0.0
    for i in range(pos.shape[0]):
        below = np.searchsorted(neg_sorted, pos[i], side="left")
        upto = np.searchsorted(neg_sorted, pos[i], side="right")
        total += below + 0.5 * (upto - below)
    return total / (pos.shape[0] * neg_sorted.shape[0])


if NUMBA_ENABLED:
    from numba import njit

    _bspline_design_jit = njit(cache=True)(_bspline_design_loop)
    _auc_pairwise_jit = njit(cache=True)(_auc_pairwise_loop)

    def bspline_design_numba(t: np.ndarray, knots: np.ndarray, degree: int) -> np.ndarray:
        t = np.ascontiguousarray(t, dtype=np.float64)
        out = np.zeros((t.shape[0], knots.shape[0] - degree - 1))
        return _bspline_design_jit(t, knots, degree, out)

    def auc_pairwise_numba(pos: np.ndarray, neg: np.ndarray) -> float:
        pos = np.ascontiguousarray(pos, dtype=np.float64)
        neg = np.sort(np.asarray(neg, dtype=np.float64))
        return float(_auc_pairwise_jit(pos, neg))

    bspline_design = bspline_design_numba
    auc_pairwise = auc_pairwise_numba
else:
    bspline_design_numba = None
    auc_pairwise_numba = None
    bspline_design = bspline_design_numpy
    auc_pairwise = auc_pairwise_numpy
