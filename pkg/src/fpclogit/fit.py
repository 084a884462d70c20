"""Composite fits: principal component scores + scalar covariates in one
binary logit model, with the functional coefficient curves rebuilt from the
fitted score coefficients.

Four entry points cover the variant (ordinary vs filtered components) and
the selection rule (leading components by explained variance vs stepwise by
prediction ability). Functional predictors are labeled A, B, C, ... in input
order; score columns are named like ``A.1``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import InvalidArgument, SchemaMismatch
from .fdata import FunctionalDataSet
from .fpca import FPCAResult, VarianceTable, fpca_filtered, fpca_ordinary, variance_table
from .logit import CONST_NAME, DesignMatrix, LogitFit, fit_logit
from .metrics import RocCurve, roc_curve
from .stepwise import StepTrace, stepwise_select


@dataclass(frozen=True)
class FPCLogitFit:
    """Everything produced by one composite fit.

    ``betalist[r]`` is the coefficient curve for predictor r on that
    predictor's own basis; ``selected[r]`` the (1-based, ascending)
    component indices that entered the model; ``intercept`` the functional
    intercept recovered from the fitted constant term.
    """

    glm: LogitFit
    intercept: float
    betalist: tuple[FunctionalDataSet, ...]
    pc_variance: tuple[VarianceTable, ...]
    roc: RocCurve
    selected: tuple[tuple[int, ...], ...]
    scalar_coefs: dict[str, float]
    labels: tuple[str, ...]
    fpcas: tuple[FPCAResult, ...]
    trace: StepTrace | None = None


def predictor_labels(count: int) -> tuple[str, ...]:
    if count > len(string.ascii_uppercase):
        raise InvalidArgument(f"at most 26 functional predictors supported, got {count}")
    return tuple(string.ascii_uppercase[:count])


def assemble_design(
    fpcas: Sequence[FPCAResult],
    selected: Sequence[Sequence[int]],
    nonfd: Mapping[str, np.ndarray] | None = None,
) -> DesignMatrix:
    """(constant | selected score columns | scalar covariates) design.

    Score columns are named by predictor letter and 1-based component index
    (A.1, A.2, ..., B.1, ...); scalar covariates keep their given names.
    """
    if len(fpcas) != len(selected):
        raise InvalidArgument(
            f"{len(selected)} selection lists for {len(fpcas)} component analyses"
        )
    letters = predictor_labels(len(fpcas))
    n_rows = {f.scores.shape[0] for f in fpcas}
    if nonfd:
        n_rows |= {np.asarray(v).reshape(-1).size for v in nonfd.values()}
    if len(n_rows) > 1:
        raise SchemaMismatch(f"row counts differ across inputs: {sorted(n_rows)}")
    columns: list[tuple[str, np.ndarray]] = []
    for letter, fpca, indices in zip(letters, fpcas, selected):
        p = fpca.scores.shape[1]
        for j in indices:
            if not 1 <= j <= p:
                raise InvalidArgument(f"component index {j} outside 1..{p} for {letter}")
            columns.append((f"{letter}.{j}", fpca.scores[:, j - 1]))
    for name, values in (nonfd or {}).items():
        name = str(name)
        prefix = name.split(".", 1)[0]
        if prefix in letters and name[len(prefix) + 1 :].isdigit():
            raise InvalidArgument(
                f"covariate name {name!r} collides with component naming"
            )
        columns.append((name, np.asarray(values, dtype=np.float64).reshape(-1)))
    seen: set[str] = set()
    for name, _ in columns:
        if name in seen or name == CONST_NAME:
            raise InvalidArgument(f"duplicate design column name {name!r}")
        seen.add(name)
    n = next(iter(n_rows)) if n_rows else None
    return DesignMatrix.build(columns, n=n)


def reconstruct_beta(fpca: FPCAResult, gamma: Mapping[int, float]) -> np.ndarray:
    """Basis coefficients of the coefficient curve from component coefficients.

    ``gamma`` maps 1-based component indices to their fitted coefficients.
    The result is the unique vector b with f_j' Psi b = gamma_j for selected
    components and 0 for the rest (the eigenfunctions are Psi-orthonormal),
    i.e. the selected eigenfunction columns weighted by their gammas.
    """
    p = fpca.eigenfn_coefs.shape[0]
    limit = fpca.n_components
    beta = np.zeros(p)
    for j, g in gamma.items():
        if not 1 <= j <= limit:
            raise InvalidArgument(f"component index {j} outside 1..{limit}")
        beta += fpca.eigenfn_coefs[:, j - 1] * g
    return beta


def reconstruct_intercept(
    gamma0: float,
    mean_coefs: Sequence[np.ndarray],
    grams: Sequence[np.ndarray],
    beta_vecs: Sequence[np.ndarray],
) -> float:
    """Functional intercept: the fitted constant minus each mean-curve term.

    alpha = gamma0 - sum_r abar_r' Psi_r beta_r, one term per functional
    predictor because each component analysis centers its own curves.
    """
    alpha = float(gamma0)
    for abar, psi, beta in zip(mean_coefs, grams, beta_vecs):
        alpha -= float(abar @ psi @ beta)
    return alpha


def _validate_inputs(y, fdlist: Sequence[FunctionalDataSet], nonfd) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if not fdlist:
        raise InvalidArgument("need at least one functional predictor")
    for i, fd in enumerate(fdlist):
        if fd.n_curves != y.size:
            raise SchemaMismatch(
                f"functional predictor {i} has {fd.n_curves} curves for {y.size} responses"
            )
    for name, v in (nonfd or {}).items():
        if np.asarray(v).reshape(-1).size != y.size:
            raise SchemaMismatch(f"covariate {name!r} length does not match the response")
    return y


def _compose(
    y: np.ndarray,
    fdlist: Sequence[FunctionalDataSet],
    fpcas: Sequence[FPCAResult],
    selected: Sequence[tuple[int, ...]],
    glm: LogitFit,
    trace: StepTrace | None,
) -> FPCLogitFit:
    letters = predictor_labels(len(fpcas))
    coef = glm.coef_by_name()
    betalist = []
    beta_vecs = []
    for letter, fd, fpca, indices in zip(letters, fdlist, fpcas, selected):
        gamma = {j: coef[f"{letter}.{j}"] for j in indices}
        beta = reconstruct_beta(fpca, gamma)
        beta_vecs.append(beta)
        betalist.append(FunctionalDataSet(basis=fd.basis, coefs=beta[None, :]))
    alpha = reconstruct_intercept(
        glm.coef[0],
        [f.mean_coefs for f in fpcas],
        [f.gram.psi for f in fpcas],
        beta_vecs,
    )
    component_names = {
        f"{letter}.{j}" for letter, indices in zip(letters, selected) for j in indices
    }
    scalar_coefs = {
        name: value
        for name, value in coef.items()
        if name != CONST_NAME and name not in component_names
    }
    return FPCLogitFit(
        glm=glm,
        intercept=alpha,
        betalist=tuple(betalist),
        pc_variance=tuple(
            variance_table(fpca, letter) for letter, fpca in zip(letters, fpcas)
        ),
        roc=roc_curve(y, glm.fitted),
        selected=tuple(selected),
        scalar_coefs=scalar_coefs,
        labels=letters,
        fpcas=tuple(fpcas),
        trace=trace,
    )


def _fit_by_variance(
    y,
    fdlist: Sequence[FunctionalDataSet],
    ncomp: Sequence[int],
    nonfd,
    decompose: Callable[[FunctionalDataSet], FPCAResult],
) -> FPCLogitFit:
    y = _validate_inputs(y, fdlist, nonfd)
    if len(ncomp) != len(fdlist):
        raise InvalidArgument(
            f"ncomp has {len(ncomp)} entries for {len(fdlist)} functional predictors"
        )
    fpcas = [decompose(fd) for fd in fdlist]
    selected: list[tuple[int, ...]] = []
    for i, (q, fpca) in enumerate(zip(ncomp, fpcas)):
        q = int(q)
        if q < 0 or q > fpca.rank:
            raise InvalidArgument(
                f"ncomp[{i}] = {q} outside 0..rank {fpca.rank} of predictor {i}"
            )
        selected.append(tuple(range(1, q + 1)))
    design = assemble_design(fpcas, selected, nonfd)
    glm = fit_logit(y, design)
    return _compose(y, fdlist, fpcas, selected, glm, trace=None)


def _fit_by_stepwise(
    y,
    fdlist: Sequence[FunctionalDataSet],
    nonfd,
    decompose: Callable[[FunctionalDataSet], FPCAResult],
) -> FPCLogitFit:
    y = _validate_inputs(y, fdlist, nonfd)
    fpcas = [decompose(fd) for fd in fdlist]
    candidates = assemble_design(
        fpcas, [tuple(range(1, f.rank + 1)) for f in fpcas], nonfd
    )
    glm, trace = stepwise_select(y, candidates)
    letters = predictor_labels(len(fpcas))
    selected = []
    for letter in letters:
        indices = sorted(
            int(name.split(".", 1)[1])
            for name in trace.final_names
            if name.startswith(f"{letter}.")
        )
        selected.append(tuple(indices))
    return _compose(y, fdlist, fpcas, selected, glm, trace=trace)


def fit_pc(y, fdlist, ncomp, nonfd=None) -> FPCLogitFit:
    """Ordinary components, the first ncomp_r per predictor (variance order)."""
    return _fit_by_variance(y, fdlist, ncomp, nonfd, fpca_ordinary)


def fit_fpc(y, fdlist, ncomp, nonfd=None) -> FPCLogitFit:
    """Filtered components, the first ncomp_r per predictor (variance order)."""
    return _fit_by_variance(y, fdlist, ncomp, nonfd, fpca_filtered)


def fit_pc_step(y, fdlist, nonfd=None) -> FPCLogitFit:
    """Ordinary components entered by stepwise prediction ability."""
    return _fit_by_stepwise(y, fdlist, nonfd, fpca_ordinary)


def fit_fpc_step(y, fdlist, nonfd=None) -> FPCLogitFit:
    """Filtered components entered by stepwise prediction ability."""
    return _fit_by_stepwise(y, fdlist, nonfd, fpca_filtered)
