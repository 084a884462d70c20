"""Independent reference run for the synthetic classification gate.

Recomputes the two-class curve experiment end to end without touching the
package's own code paths: scipy B-splines + explicit normal equations for
smoothing, grid-based PCA with trapezoid weights for the components,
scipy.optimize for the logit MLE, sklearn for the AUC. The resulting CCR
and AUC are frozen into tests/test_acceptance.py.

Run from the repository root:  python3 tools/oracle_synthetic.py
"""

import sys
from pathlib import Path

import numpy as np
from scipy.interpolate import BSpline
from scipy.optimize import minimize
from sklearn.metrics import roc_auc_score

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from helpers import two_class_curves  # noqa: E402

DEGREE = 3
NBASIS = 7
N_COMPONENTS = 3
GRID = 4001


def scipy_design(argvals, lo, hi):
    inner = np.linspace(lo, hi, NBASIS - DEGREE + 1)
    knots = np.concatenate([np.full(DEGREE, lo), inner, np.full(DEGREE, hi)])
    cols = []
    for j in range(NBASIS):
        c = np.zeros(NBASIS)
        c[j] = 1.0
        cols.append(BSpline(knots, c, DEGREE, extrapolate=False)(argvals))
    return np.column_stack(cols)


def main():
    argvals, x, y = two_class_curves()
    lo, hi = 0.0, 1.0
    phi = scipy_design(argvals, lo, hi)
    coefs = np.linalg.solve(phi.T @ phi, phi.T @ x.T).T

    grid = np.linspace(lo, hi, GRID)
    grid_eval = grid.copy()
    grid_eval[-1] = hi - 1e-12
    phi_grid = scipy_design(grid_eval, lo, hi)
    values = coefs @ phi_grid.T
    centered = values - values.mean(axis=0)

    w = np.full(GRID, (hi - lo) / (GRID - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    sw = np.sqrt(w)
    b = (centered * sw).T @ (centered * sw) / (x.shape[0] - 1)
    eigvals, eigvecs = np.linalg.eigh(b)
    order = np.argsort(eigvals)[::-1][:N_COMPONENTS]
    scores = (centered * sw) @ eigvecs[:, order]

    design = np.column_stack([np.ones(x.shape[0]), scores])

    def nll(beta):
        eta = design @ beta
        return np.logaddexp(0.0, eta).sum() - y @ eta

    def grad(beta):
        eta = design @ beta
        return design.T @ (1.0 / (1.0 + np.exp(-eta)) - y)

    res = minimize(nll, np.zeros(design.shape[1]), jac=grad, method="BFGS",
                   options={"maxiter": 500, "gtol": 1e-10})
    probs = 1.0 / (1.0 + np.exp(-design @ res.x))
    pred = (probs >= 0.5).astype(float)
    ccr = 100.0 * np.mean(pred == y)
    auc = roc_auc_score(y, probs)
    print(f"oracle deviance: {2 * res.fun:.10f}  (converged: {res.success})")
    print(f"oracle CCR: {ccr!r}")
    print(f"oracle AUC: {auc!r}")


if __name__ == "__main__":
    main()
