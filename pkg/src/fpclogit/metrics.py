"""Classification diagnostics: ROC curve, AUC, confusion table, CCR."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateResponse, InvalidArgument, SchemaMismatch


@dataclass(frozen=True)
class RocCurve:
    """Operating points at every distinct score, bracketed by +/-inf sentinels.

    A point classifies positive where score >= threshold; ``auc`` is the
    exact pairwise Mann-Whitney statistic (ties count one half).
    """

    thresholds: np.ndarray
    tpr: np.ndarray
    fpr: np.ndarray
    auc: float


def _check_pair(y, p) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    if y.size != p.size:
        raise SchemaMismatch(f"{y.size} responses for {p.size} scores")
    if not np.isin(y, (0.0, 1.0)).all():
        raise InvalidArgument("response must contain only 0 and 1")
    if not np.isfinite(p).all():
        raise InvalidArgument("scores contain non-finite entries")
    return y, p


def roc_curve(y, p) -> RocCurve:
    """ROC over the distinct score values, plus the pairwise AUC."""
    y, p = _check_pair(y, p)
    n_pos = int(y.sum())
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateResponse("ROC needs both classes present")
    order = np.argsort(-p, kind="stable")
    p_sorted = p[order]
    y_sorted = y[order]
    cum_tp = np.cumsum(y_sorted)
    cum_fp = np.cumsum(1.0 - y_sorted)
    # last index of each run of equal scores
    last = np.nonzero(np.append(np.diff(p_sorted) != 0.0, True))[0]
    thresholds = np.concatenate(([np.inf], p_sorted[last], [-np.inf]))
    tpr = np.concatenate(([0.0], cum_tp[last] / n_pos, [1.0]))
    fpr = np.concatenate(([0.0], cum_fp[last] / n_neg, [1.0]))
    auc = _kernels.auc_pairwise(p[y == 1.0], p[y == 0.0])
    return RocCurve(thresholds=thresholds, tpr=tpr, fpr=fpr, auc=float(auc))


def confusion_ccr(y, p, threshold: float = 0.5) -> tuple[np.ndarray, float]:
    """2x2 table (rows: actual 0/1, cols: predicted 0/1) and percent correct.

    Predicted class is 1 when p >= threshold, i.e. round-half-up at the
    default 0.5.
    """
    y, p = _check_pair(y, p)
    if y.size == 0:
        raise InvalidArgument("need at least one observation")
    pred = (p >= threshold).astype(np.int64)
    actual = y.astype(np.int64)
    table = np.zeros((2, 2), dtype=np.int64)
    for a in (0, 1):
        for b in (0, 1):
            table[a, b] = int(np.sum((actual == a) & (pred == b)))
    ccr = 100.0 * (table[0, 0] + table[1, 1]) / y.size
    return table, float(ccr)
