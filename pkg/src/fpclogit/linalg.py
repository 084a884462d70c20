"""Dense symmetric linear algebra and quadrature primitives.

Everything here is a pure function of its arguments; results are
deterministic so downstream decompositions are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, InvalidMatrix, NotPSD, RankDeficient


@dataclass(frozen=True)
class SymEigen:
    """Eigendecomposition of a symmetric matrix.

    ``values`` are sorted descending; column k of ``vectors`` is the unit
    eigenvector for ``values[k]``, sign-fixed so the largest-magnitude
    entry (first such entry on ties) is positive.
    """

    values: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray


def _check_square_finite(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise InvalidMatrix(f"expected a square matrix, got shape {s.shape}")
    if not np.isfinite(s).all():
        raise InvalidMatrix("matrix has non-finite entries")
    return s


def sym_eigen(s: np.ndarray) -> SymEigen:
    """Eigendecomposition of a symmetric matrix, canonicalized.

    The input is symmetrized as (S + S')/2 before decomposition, eigenvalues
    are returned in descending order, and each eigenvector's sign is fixed so
    its largest-magnitude entry is positive (ties resolved by the first such
    entry).
    """
    s = _check_square_finite(s)
    sym = 0.5 * (s + s.T)
    values, vectors = np.linalg.eigh(sym)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for k in range(vectors.shape[1]):
        col = vectors[:, k]
        if col[int(np.argmax(np.abs(col)))] < 0:
            vectors[:, k] = -col
    return SymEigen(values=values, vectors=vectors)


def matrix_sqrt_sym(s: np.ndarray) -> np.ndarray:
    """Symmetric square root V diag(sqrt(max(lambda, 0))) V' of a PSD matrix.

    Eigenvalues below -1e-10 * ||S|| raise NotPSD; small negatives are
    clamped to zero (Gram and covariance matrices are PSD analytically,
    negatives are roundoff).
    """
    eig = sym_eigen(s)
    if eig.values.size == 0:
        return np.zeros((0, 0))
    scale = float(np.abs(eig.values).max())
    if eig.values.min() < -1e-10 * scale:
        raise NotPSD(f"eigenvalue {eig.values.min():.3e} below PSD tolerance")
    root = np.sqrt(np.clip(eig.values, 0.0, None))
    out = (eig.vectors * root) @ eig.vectors.T
    return 0.5 * (out + out.T)


def matrix_inv_sqrt_sym(s: np.ndarray) -> np.ndarray:
    """Inverse symmetric square root of a strictly positive definite matrix."""
    eig = sym_eigen(s)
    if eig.values.size == 0:
        return np.zeros((0, 0))
    scale = float(np.abs(eig.values).max())
    if scale == 0.0 or eig.values.min() <= 1e-14 * scale:
        raise NotPSD("matrix is singular or indefinite; no inverse square root")
    inv_root = 1.0 / np.sqrt(eig.values)
    out = (eig.vectors * inv_root) @ eig.vectors.T
    return 0.5 * (out + out.T)


def gauss_legendre(n: int, a: float, b: float) -> QuadratureRule:
    """Gauss-Legendre rule with n nodes mapped from (-1, 1) to (a, b)."""
    if n < 1:
        raise InvalidArgument(f"need at least one node, got n={n}")
    if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
        raise InvalidArgument(f"invalid interval ({a}, {b})")
    x, w = np.polynomial.legendre.leggauss(int(n))
    half = 0.5 * (b - a)
    return QuadratureRule(nodes=half * x + 0.5 * (a + b), weights=half * w)


def lstsq(m: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Least-squares solve min ||M X - B||_F via orthogonal factorization.

    Requires m >= p rows and full column rank; a numerically rank-deficient
    M raises RankDeficient with the detected rank rather than silently
    falling back to a pseudo-inverse.
    """
    m = np.asarray(m, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if m.ndim != 2:
        raise InvalidMatrix(f"design must be 2-D, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise InvalidMatrix("design has non-finite entries")
    rows, cols = m.shape
    if rows < cols:
        raise InvalidArgument(f"need at least {cols} rows, got {rows}")
    x, _, rank, _ = np.linalg.lstsq(m, b, rcond=None)
    if rank < cols:
        raise RankDeficient(f"numerical rank {rank} < {cols} columns")
    return x
