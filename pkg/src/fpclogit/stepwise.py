"""Bidirectional stepwise selection of design columns by penalized deviance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, RankDeficient
from .logit import DesignMatrix, LogitFit, fit_logit

IMPROVEMENT_TOL = 1e-10


@dataclass(frozen=True)
class StepRecord:
    action: str  # "add" | "drop"
    name: str
    aic: float


@dataclass(frozen=True)
class StepTrace:
    """The applied moves, rank-deficient candidates skipped, and final model."""

    steps: tuple[StepRecord, ...]
    skipped: tuple[tuple[int, str], ...]
    final_names: tuple[str, ...]
    final_aic: float


def _penalized_aic(fit: LogitFit, k: float) -> float:
    return fit.residual_deviance + k * len(fit.coef)


def stepwise_select(y, candidates: DesignMatrix, k: float = 2.0) -> tuple[LogitFit, StepTrace]:
    """Greedy bidirectional search minimizing deviance + k * (#params).

    Starts from the intercept-only model; each round evaluates every single
    add of an unused candidate and every single drop of a current member and
    applies the best move if it improves the criterion by more than 1e-10.
    Ties go to the move enumerated first (adds in candidate order, then
    drops in membership order), which makes traces deterministic.
    """
    if len(candidates.names) <= 1:
        raise InvalidArgument("no candidate columns to select from")
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    pool = list(candidates.names[1:])
    members: list[str] = []
    current_fit = fit_logit(y, candidates.subset([]))
    current_aic = _penalized_aic(current_fit, k)
    steps: list[StepRecord] = []
    skipped: list[tuple[int, str]] = []

    round_no = 0
    while True:
        round_no += 1
        moves: list[tuple[float, str, str, LogitFit]] = []
        for name in pool:
            if name in members:
                continue
            try:
                fit = fit_logit(y, candidates.subset(members + [name]))
            except RankDeficient:
                skipped.append((round_no, name))
                continue
            moves.append((_penalized_aic(fit, k), "add", name, fit))
        for name in members:
            reduced = [m for m in members if m != name]
            try:
                fit = fit_logit(y, candidates.subset(reduced))
            except RankDeficient:
                skipped.append((round_no, name))
                continue
            moves.append((_penalized_aic(fit, k), "drop", name, fit))
        if not moves:
            break
        best = min(moves, key=lambda m: m[0])
        best_aic, action, name, fit = best
        if best_aic >= current_aic - IMPROVEMENT_TOL:
            break
        if action == "add":
            members.append(name)
        else:
            members.remove(name)
        current_fit, current_aic = fit, best_aic
        steps.append(StepRecord(action=action, name=name, aic=best_aic))

    trace = StepTrace(
        steps=tuple(steps),
        skipped=tuple(skipped),
        final_names=tuple(members),
        final_aic=current_aic,
    )
    return current_fit, trace
