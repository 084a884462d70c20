"""Independent oracles shared by the test modules.

Everything here deliberately avoids the library's own computation paths:
closed-form 2x2 eigen solves, composite-trapezoid integration, and a dense
grid search for the two-parameter logit MLE.
"""

from __future__ import annotations

import math

import numpy as np

from fpclogit.basis import eval_basis


def eig2_sym(s):
    """Closed-form eigendecomposition of a symmetric 2x2 matrix.

    Returns (values desc, vectors as columns), sign-fixed so the
    largest-magnitude entry of each column (first on ties) is positive.
    """
    a, b, c = float(s[0][0]), float(s[0][1]), float(s[1][1])
    scale = max(abs(a), abs(b), abs(c), 1e-300)
    if abs(b) <= 1e-12 * scale:
        # effectively diagonal: eigenvectors are coordinate axes
        if a >= c:
            return np.array([a, c]), np.eye(2)
        return np.array([c, a]), np.eye(2)[:, ::-1].copy()
    half_tr = 0.5 * (a + c)
    disc = math.sqrt(max(0.25 * (a - c) ** 2 + b * b, 0.0))
    values = np.array([half_tr + disc, half_tr - disc])
    vectors = np.empty((2, 2))
    for k, lam in enumerate(values):
        v = np.array([b, lam - a])
        v = v / np.linalg.norm(v)
        if v[int(np.argmax(np.abs(v)))] < 0:
            v = -v
        vectors[:, k] = v
    return values, vectors


def sqrtm2_sym(s):
    """Closed-form symmetric square root of an SPD 2x2 matrix."""
    values, vectors = eig2_sym(s)
    return (vectors * np.sqrt(values)) @ vectors.T


def inv_sqrtm2_sym(s):
    values, vectors = eig2_sym(s)
    return (vectors / np.sqrt(values)) @ vectors.T


def trapezoid_gram(basis, n_points: int = 100_001) -> np.ndarray:
    """Composite-trapezoid approximation of the basis Gram matrix.

    The rule is applied piecewise between knots (for B-splines) so the
    integrand is smooth on every piece; roughly n_points panels total.
    """
    lo, hi = basis.rangeval
    if basis.knots is not None:
        breaks = np.unique(np.asarray(basis.knots))
    else:
        breaks = np.array([lo, hi])
    psi = np.zeros((basis.nbasis, basis.nbasis))
    for a, b in zip(breaks[:-1], breaks[1:]):
        pieces = max(2, int(round(n_points * (b - a) / (hi - lo))))
        grid = np.linspace(a, b, pieces)
        eval_points = grid.copy()
        eval_points[-1] = b - (b - a) * 1e-12  # left limit at the piece's right end
        phi = eval_basis(basis, eval_points)
        w = np.full(pieces, (b - a) / (pieces - 1))
        w[0] *= 0.5
        w[-1] *= 0.5
        psi += phi.T @ (w[:, None] * phi)
    return psi


def nll_logit(eta: np.ndarray, y: np.ndarray) -> float:
    return float(np.logaddexp(0.0, eta).sum() - y @ eta)


def grid_logit_oracle(x, y, lo=-10.0, hi=10.0, step=0.05, refinements=2):
    """Dense 2-D grid search for the (intercept, slope) logit MLE.

    Scans [lo, hi]^2 at ``step``, then refines twice around the best point
    with a 10x finer step. Returns (coef array, deviance).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    best = None
    a_lo, a_hi, g_lo, g_hi = lo, hi, lo, hi
    for level in range(refinements + 1):
        a_grid = np.arange(a_lo, a_hi + 0.5 * step, step)
        g_grid = np.arange(g_lo, g_hi + 0.5 * step, step)
        aa, gg = np.meshgrid(a_grid, g_grid, indexing="ij")
        eta = aa.reshape(-1, 1) + gg.reshape(-1, 1) * x[None, :]
        nll = np.logaddexp(0.0, eta).sum(axis=1) - eta @ y
        k = int(np.argmin(nll))
        best = (float(aa.reshape(-1)[k]), float(gg.reshape(-1)[k]), float(nll[k]))
        a_lo, a_hi = best[0] - 2 * step, best[0] + 2 * step
        g_lo, g_hi = best[1] - 2 * step, best[1] + 2 * step
        step /= 10.0
    coef = np.array([best[0], best[1]])
    return coef, 2.0 * best[2]


def two_class_curves(seed: int = 42, n: int = 80, m: int = 21):
    """Two groups of smooth random curves with different mean shapes.

    Returns (argvals, observations, y). Group 1 has a bump shifted right of
    group 0's, plus shared smooth variation and observation noise, so the
    classes are separable by curve shape but not trivially by level.
    """
    rng = np.random.default_rng(seed)
    argvals = np.linspace(0.0, 1.0, m)
    y = np.zeros(n)
    y[n // 2 :] = 1.0
    rows = []
    for yi in y:
        center = 0.33 if yi == 0 else 0.57
        bump = np.exp(-0.5 * ((argvals - center) / 0.18) ** 2)
        wiggle = (
            rng.normal(0, 0.32) * np.sin(2 * np.pi * argvals)
            + rng.normal(0, 0.32) * np.cos(2 * np.pi * argvals)
            + rng.normal(0, 0.25) * argvals
        )
        rows.append(2.2 * bump + wiggle + rng.normal(0, 0.15, m))
    return argvals, np.array(rows), y
