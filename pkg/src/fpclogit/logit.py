"""Binomial logit GLM fitted by iteratively reweighted least squares."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    DegenerateResponse,
    InvalidArgument,
    RankDeficient,
    SchemaMismatch,
)

MAX_ITERATIONS = 25
DEVIANCE_TOL = 1e-8
WEIGHT_FLOOR = 1e-10
SEPARATION_TOL = 1e-10
MAX_HALVINGS = 10
LOGIT_CLAMP = 700.0
CONST_NAME = "(Intercept)"


@dataclass(frozen=True)
class DesignMatrix:
    """Named design columns; the first column is the constant 1."""

    names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.atleast_2d(np.asarray(self.values, dtype=np.float64))
        if values.shape[1] != len(self.names):
            raise SchemaMismatch(
                f"{len(self.names)} names for {values.shape[1]} columns"
            )
        if len(set(self.names)) != len(self.names):
            raise InvalidArgument("design column names must be unique")
        if not np.isfinite(values).all():
            raise InvalidArgument("design contains non-finite entries")
        constant = [j for j in range(values.shape[1]) if np.all(values[:, j] == values[0, j])]
        if not (constant and constant[0] == 0 and values[0, 0] == 1.0 and len(constant) == 1):
            raise InvalidArgument(
                "design must contain exactly one constant column, first and equal to 1"
            )
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "values", values)

    @classmethod
    def build(cls, columns: Iterable[tuple[str, np.ndarray]], n: int | None = None) -> "DesignMatrix":
        """Assemble (constant | columns) from named vectors."""
        cols = [(name, np.asarray(v, dtype=np.float64).reshape(-1)) for name, v in columns]
        if n is None:
            if not cols:
                raise InvalidArgument("cannot infer row count from an empty column list")
            n = cols[0][1].size
        for name, v in cols:
            if v.size != n:
                raise SchemaMismatch(f"column {name!r} has {v.size} rows, expected {n}")
        names = (CONST_NAME,) + tuple(name for name, _ in cols)
        values = np.column_stack([np.ones(n)] + [v for _, v in cols]) if cols else np.ones((n, 1))
        return cls(names=names, values=values)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    def subset(self, names: Iterable[str]) -> "DesignMatrix":
        """Sub-design with the constant plus the given columns, in order."""
        index = {name: j for j, name in enumerate(self.names)}
        wanted = list(names)
        missing = [nm for nm in wanted if nm not in index]
        if missing:
            raise SchemaMismatch(f"unknown design columns {missing}")
        keep = [0] + [index[nm] for nm in wanted]
        return DesignMatrix(
            names=(self.names[0],) + tuple(wanted),
            values=self.values[:, keep],
        )


@dataclass(frozen=True)
class LogitFit:
    """An IRLS-fitted binomial GLM."""

    names: tuple[str, ...]
    coef: np.ndarray
    cov: np.ndarray
    fitted: np.ndarray
    null_deviance: float
    residual_deviance: float
    aic: float
    iterations: int
    converged: bool
    separation_flag: bool
    deviance_history: tuple[float, ...]

    @property
    def n_obs(self) -> int:
        return self.fitted.size

    def coef_by_name(self) -> dict[str, float]:
        return {name: float(c) for name, c in zip(self.names, self.coef)}


def _check_response(y) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if not np.isin(y, (0.0, 1.0)).all():
        raise InvalidArgument("response must contain only 0 and 1")
    if y.min() == y.max():
        raise DegenerateResponse("response takes a single value")
    return y


_PROB_LO = 1e-300
_PROB_HI = float(np.nextafter(1.0, 0.0))


def _mean_probs(eta: np.ndarray) -> np.ndarray:
    pi = 1.0 / (1.0 + np.exp(-np.clip(eta, -LOGIT_CLAMP, LOGIT_CLAMP)))
    return np.clip(pi, _PROB_LO, _PROB_HI)


def _deviance(y: np.ndarray, eta: np.ndarray) -> float:
    # -2 log-likelihood, computed from the linear predictor so saturated
    # probabilities cannot overflow the log
    return float(2.0 * (np.logaddexp(0.0, eta).sum() - y @ eta))


def fit_logit(y, design: DesignMatrix) -> LogitFit:
    """Fisher-scoring fit of P(y=1) = exp(l)/(1 + exp(l)), l = X beta.

    Starts from the intercept at logit(mean(y)) and iterates weighted least
    squares with weights pi(1-pi) floored at 1e-10, halving the step (up to
    10 times) whenever the deviance would increase. Stops when the relative
    deviance change drops below 1e-8 or after 25 iterations. Fits where any
    fitted probability ends within 1e-10 of 0 or 1 are flagged as separated
    but still returned, since quasi-separated fits are legitimate outputs.
    """
    y = _check_response(y)
    x = design.values
    n, k = x.shape
    if y.size != n:
        raise SchemaMismatch(f"{y.size} responses for {n} design rows")
    if n <= k:
        raise InvalidArgument(f"need more observations than the {k} design columns")
    if np.linalg.matrix_rank(x) < k:
        raise RankDeficient(f"design has rank below {k}")

    ybar = min(max(float(y.mean()), 1e-6), 1.0 - 1e-6)
    beta = np.zeros(k)
    beta[0] = math.log(ybar / (1.0 - ybar))
    eta = x @ beta
    pi = _mean_probs(eta)
    dev = _deviance(y, eta)
    history = [dev]

    converged = False
    iterations = 0
    for _ in range(MAX_ITERATIONS):
        iterations += 1
        w = np.clip(pi * (1.0 - pi), WEIGHT_FLOOR, None)
        z = eta + (y - pi) / w
        sw = np.sqrt(w)
        proposal, *_ = np.linalg.lstsq(x * sw[:, None], z * sw, rcond=None)
        step = proposal - beta
        factor = 1.0
        for _ in range(MAX_HALVINGS + 1):
            candidate = beta + factor * step
            eta_new = x @ candidate
            dev_new = _deviance(y, eta_new)
            if dev_new <= dev or factor <= 2.0 ** (-MAX_HALVINGS):
                break
            factor *= 0.5
        if not dev_new <= dev:
            # even the fully halved step increases deviance (or is not
            # finite): keep the current fit
            history.append(dev)
            break
        beta, eta = candidate, eta_new
        pi = _mean_probs(eta)
        history.append(dev_new)
        if abs(dev_new - dev) / (abs(dev_new) + 0.1) < DEVIANCE_TOL:
            dev = dev_new
            converged = True
            break
        dev = dev_new

    dev = history[-1]
    separated = bool(np.any(pi <= SEPARATION_TOL) or np.any(pi >= 1.0 - SEPARATION_TOL))
    w = np.clip(pi * (1.0 - pi), WEIGHT_FLOOR, None)
    cov = np.linalg.inv(x.T @ (w[:, None] * x))
    p0 = float(y.mean())
    null_dev = -2.0 * (y.sum() * math.log(p0) + (n - y.sum()) * math.log(1.0 - p0))
    return LogitFit(
        names=design.names,
        coef=beta,
        cov=cov,
        fitted=pi,
        null_deviance=null_dev,
        residual_deviance=dev,
        aic=dev + 2.0 * k,
        iterations=iterations,
        converged=converged,
        separation_flag=separated,
        deviance_history=tuple(history),
    )


def predict_logit(fit: LogitFit, design: DesignMatrix) -> np.ndarray:
    """Fitted probabilities for a design with the same columns as the fit."""
    if design.names != fit.names:
        raise SchemaMismatch(
            f"design columns {design.names} do not match fit columns {fit.names}"
        )
    return _mean_probs(design.values @ fit.coef)


@dataclass(frozen=True)
class CoefficientRow:
    name: str
    estimate: float
    std_error: float
    z_value: float
    p_value: float


@dataclass(frozen=True)
class LogitSummary:
    rows: tuple[CoefficientRow, ...]
    null_deviance: float
    residual_deviance: float
    aic: float
    iterations: int
    df_null: int
    df_residual: int

    def to_text(self) -> str:
        width = max(len(r.name) for r in self.rows)
        lines = [f"{'':<{width}}  {'Estimate':>12} {'Std. Error':>12} {'z value':>9} {'Pr(>|z|)':>9}"]
        for r in self.rows:
            lines.append(
                f"{r.name:<{width}}  {r.estimate:>12.5f} {r.std_error:>12.5f}"
                f" {r.z_value:>9.3f} {r.p_value:>9.4f}"
            )
        lines.append("")
        lines.append(f"Null deviance: {self.null_deviance:.5g} on {self.df_null} degrees of freedom")
        lines.append(
            f"Residual deviance: {self.residual_deviance:.5g} on {self.df_residual} degrees of freedom"
        )
        lines.append(f"AIC: {self.aic:.5g}")
        lines.append(f"Number of Fisher Scoring iterations: {self.iterations}")
        return "\n".join(lines)


def logit_summary(fit: LogitFit) -> LogitSummary:
    """Coefficient table with normal-theory standard errors and p-values."""
    se = np.sqrt(np.diag(fit.cov))
    rows = []
    for name, est, s in zip(fit.names, fit.coef, se):
        z = est / s if s > 0 else math.inf * np.sign(est)
        p = math.erfc(abs(z) / math.sqrt(2.0))
        rows.append(CoefficientRow(name, float(est), float(s), float(z), float(p)))
    n, k = fit.n_obs, len(fit.names)
    return LogitSummary(
        rows=tuple(rows),
        null_deviance=fit.null_deviance,
        residual_deviance=fit.residual_deviance,
        aic=fit.aic,
        iterations=fit.iterations,
        df_null=n - 1,
        df_residual=n - k,
    )


def summary_to_json(summary: LogitSummary) -> Mapping:
    return {
        "coefficients": [
            {
                "name": r.name,
                "estimate": r.estimate,
                "std_error": r.std_error,
                "z_value": r.z_value,
                "p_value": r.p_value,
            }
            for r in summary.rows
        ],
        "null_deviance": summary.null_deviance,
        "residual_deviance": summary.residual_deviance,
        "aic": summary.aic,
        "iterations": summary.iterations,
        "df_null": summary.df_null,
        "df_residual": summary.df_residual,
    }
