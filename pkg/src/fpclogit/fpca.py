"""Ordinary and filtered functional principal component analysis.

Both variants reduce to a multivariate PCA in coefficient space: the
ordinary variant decomposes the covariance of A_c Psi^(1/2), the filtered
variant that of A_c Psi (A_c the centered coefficient matrix, Psi the basis
Gram matrix). Eigenfunction coefficients are mapped back with Psi^(-1/2),
which makes the eigenfunctions Psi-orthonormal in both cases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import GramMatrix, gram_matrix
from .errors import InsufficientData
from .fdata import FunctionalDataSet
from .linalg import matrix_inv_sqrt_sym, matrix_sqrt_sym, sym_eigen

NEGLIGIBLE_EIGENVALUE = 1e-12  # relative to the leading eigenvalue


@dataclass(frozen=True)
class FPCAResult:
    """Scores, eigenfunction coefficients and eigenvalues of one analysis.

    ``scores`` is n x p (column means zero, column j has sample variance
    eigenvalues[j]); column j of ``eigenfn_coefs`` holds the basis
    coefficients of the j-th principal component curve. Components beyond
    min(p, n-1), and trailing components with negligible eigenvalue, carry
    eigenvalue 0 and an all-zero score column.
    """

    variant: str
    scores: np.ndarray
    eigenfn_coefs: np.ndarray
    eigenvalues: np.ndarray
    mean_coefs: np.ndarray
    gram: GramMatrix

    @property
    def n_curves(self) -> int:
        return self.scores.shape[0]

    @property
    def n_components(self) -> int:
        """min(p, n-1): components that can carry variance."""
        return min(self.scores.shape[1], self.n_curves - 1)

    @property
    def rank(self) -> int:
        """Number of components with strictly positive eigenvalue."""
        return int(np.count_nonzero(self.eigenvalues > 0.0))


def _fpca(fd: FunctionalDataSet, variant: str) -> FPCAResult:
    n, p = fd.coefs.shape
    if n < 2:
        raise InsufficientData(f"need at least 2 curves, got {n}")
    gram = gram_matrix(fd.basis)
    mean = fd.coefs.mean(axis=0)
    centered = fd.coefs - mean
    if variant == "ordinary":
        h = centered @ matrix_sqrt_sym(gram.psi)
    else:
        h = centered @ gram.psi
    eig = sym_eigen(h.T @ h / (n - 1))
    values = np.clip(eig.values, 0.0, None)
    scores = h @ eig.vectors
    limit = min(p, n - 1)
    values[limit:] = 0.0
    if values[0] > 0.0:
        values[values < NEGLIGIBLE_EIGENVALUE * values[0]] = 0.0
    scores[:, values == 0.0] = 0.0
    coefs = matrix_inv_sqrt_sym(gram.psi) @ eig.vectors
    return FPCAResult(
        variant=variant,
        scores=scores,
        eigenfn_coefs=coefs,
        eigenvalues=values,
        mean_coefs=mean,
        gram=gram,
    )


def fpca_ordinary(fd: FunctionalDataSet) -> FPCAResult:
    """FPCA of the curves themselves (PCA of A_c Psi^(1/2))."""
    return _fpca(fd, "ordinary")


def fpca_filtered(fd: FunctionalDataSet) -> FPCAResult:
    """FPCA of the Gram-transformed curves (PCA of A_c Psi)."""
    return _fpca(fd, "filtered")


@dataclass(frozen=True)
class VarianceTable:
    """Percent and cumulative percent of variance per component."""

    labels: tuple[str, ...]
    percent: np.ndarray
    cumulative: np.ndarray

    def rows(self):
        return list(zip(self.labels, self.percent, self.cumulative))

    def to_text(self, decimals: int = 3) -> str:
        width = max((len(lab) for lab in self.labels), default=4)
        lines = [f"{'Comp.':<{width + 2}}{'percent':>12}{'cumulative':>12}"]
        for lab, pct, cum in self.rows():
            lines.append(f"{lab:<{width + 2}}{pct:>12.{decimals}f}{cum:>12.{decimals}f}")
        return "\n".join(lines)


def variance_table(result: FPCAResult, prefix: str) -> VarianceTable:
    """Explained-variance table for the first min(p, n-1) components."""
    limit = result.n_components
    lam = result.eigenvalues[:limit]
    total = lam.sum()
    percent = 100.0 * lam / total if total > 0.0 else np.zeros(limit)
    return VarianceTable(
        labels=tuple(f"{prefix}.{j}" for j in range(1, limit + 1)),
        percent=percent,
        cumulative=np.cumsum(percent),
    )
