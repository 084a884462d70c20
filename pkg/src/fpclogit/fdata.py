"""Functional data sets: smoothing, evaluation, mean and centering."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import BasisSystem, eval_basis
from .errors import InvalidArgument, SchemaMismatch, UnderDetermined
from .linalg import lstsq


@dataclass(frozen=True)
class FunctionalDataSet:
    """n curves stored as an n x p matrix of basis coefficients (row per curve)."""

    basis: BasisSystem
    coefs: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        coefs = np.atleast_2d(np.asarray(self.coefs, dtype=np.float64))
        if coefs.ndim != 2 or coefs.shape[1] != self.basis.nbasis:
            raise InvalidArgument(
                f"coefs must be n x {self.basis.nbasis}, got shape {coefs.shape}"
            )
        if not np.isfinite(coefs).all():
            raise InvalidArgument("coefs contain non-finite entries")
        if self.labels is not None and len(self.labels) != coefs.shape[0]:
            raise SchemaMismatch(
                f"{len(self.labels)} labels for {coefs.shape[0]} curves"
            )
        object.__setattr__(self, "coefs", coefs)

    @property
    def n_curves(self) -> int:
        return self.coefs.shape[0]


def smooth_data(argvals, x, basis: BasisSystem) -> FunctionalDataSet:
    """Least-squares basis coefficients for discretely observed curves.

    Each row of ``x`` holds one curve sampled at the common grid ``argvals``;
    row i of the result minimizes sum_k (x_i(t_k) - sum_j a_ij phi_j(t_k))^2.
    """
    argvals = np.asarray(argvals, dtype=np.float64)
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if argvals.ndim != 1:
        raise InvalidArgument(f"argvals must be 1-D, got shape {argvals.shape}")
    if np.any(np.diff(argvals) <= 0):
        raise InvalidArgument("argvals must be strictly increasing")
    if x.shape[1] != argvals.size:
        raise SchemaMismatch(
            f"observation matrix has {x.shape[1]} columns but {argvals.size} argvals"
        )
    if not np.isfinite(x).all():
        raise InvalidArgument("observations contain non-finite entries")
    if argvals.size < basis.nbasis:
        raise UnderDetermined(
            f"{argvals.size} sampling points cannot determine {basis.nbasis} coefficients"
        )
    phi = eval_basis(basis, argvals)
    coefs = lstsq(phi, x.T).T
    return FunctionalDataSet(basis=basis, coefs=coefs)


def eval_fd(fd: FunctionalDataSet, t) -> np.ndarray:
    """Evaluate all curves at each t: returns the n x len(t) value matrix."""
    phi = eval_basis(fd.basis, t)
    return fd.coefs @ phi.T


def mean_fd(fd: FunctionalDataSet) -> FunctionalDataSet:
    """The single mean curve, with coefficients the column means."""
    if fd.n_curves < 1:
        raise InvalidArgument("cannot take the mean of an empty data set")
    return FunctionalDataSet(basis=fd.basis, coefs=fd.coefs.mean(axis=0, keepdims=True))


def center_fd(fd: FunctionalDataSet) -> FunctionalDataSet:
    """Subtract the mean curve from every curve."""
    if fd.n_curves < 1:
        return fd
    centered = fd.coefs - fd.coefs.mean(axis=0, keepdims=True)
    return FunctionalDataSet(basis=fd.basis, coefs=centered, labels=fd.labels)
