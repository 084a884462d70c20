"""Fourier and B-spline basis systems: evaluation and Gram matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidArgument, OutOfDomain
from .linalg import gauss_legendre

DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class BasisSystem:
    """A finite function basis on a closed interval.

    ``kind`` is "fourier" or "bspline". Fourier systems carry a period
    (defaults to the interval width, making the system orthonormal);
    B-spline systems carry a polynomial degree and the full clamped knot
    vector (end multiplicity degree + 1).
    """

    kind: str
    rangeval: tuple[float, float]
    nbasis: int
    degree: int | None = None
    period: float | None = None
    knots: tuple[float, ...] | None = field(default=None, repr=False)

    def knot_array(self) -> np.ndarray:
        return np.asarray(self.knots, dtype=np.float64)


def _check_interval(rangeval) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in rangeval)
    except (TypeError, ValueError) as exc:
        raise InvalidArgument(f"rangeval must be a pair of numbers, got {rangeval!r}") from exc
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise InvalidArgument(f"degenerate interval [{lo}, {hi}]")
    return lo, hi


def create_fourier(rangeval, nbasis: int, period: float | None = None) -> BasisSystem:
    """Fourier system: constant, then sin/cos pairs of increasing frequency.

    phi_1 = 1/sqrt(T), phi_2k = sqrt(2/T) sin(2 pi k (t - t_min)/T),
    phi_2k+1 = sqrt(2/T) cos(2 pi k (t - t_min)/T), with T the period.
    An even ``nbasis`` is promoted to the next odd value so sin/cos pair up.
    """
    lo, hi = _check_interval(rangeval)
    if nbasis < 1:
        raise InvalidArgument(f"nbasis must be >= 1, got {nbasis}")
    nbasis = int(nbasis)
    if nbasis % 2 == 0:
        nbasis += 1
    if period is None:
        period = hi - lo
    elif not (math.isfinite(period) and period > 0):
        raise InvalidArgument(f"period must be positive, got {period}")
    return BasisSystem(kind="fourier", rangeval=(lo, hi), nbasis=nbasis, period=float(period))


def create_bspline(
    rangeval,
    nbasis: int,
    degree: int = 3,
    breakpoints=None,
) -> BasisSystem:
    """B-spline system over equally spaced breakpoints (or user-supplied ones).

    nbasis = (#interior breakpoints) + degree + 1; the knot vector is clamped
    with multiplicity degree + 1 at both ends. Custom breakpoints must be
    strictly increasing and span the interval.
    """
    lo, hi = _check_interval(rangeval)
    degree = int(degree)
    if degree < 0:
        raise InvalidArgument(f"degree must be >= 0, got {degree}")
    if nbasis < degree + 1:
        raise InvalidArgument(f"nbasis must be >= degree + 1 = {degree + 1}, got {nbasis}")
    nbasis = int(nbasis)
    n_breaks = nbasis - degree + 1  # includes both endpoints
    if breakpoints is None:
        breaks = np.linspace(lo, hi, n_breaks)
    else:
        breaks = np.asarray(breakpoints, dtype=np.float64)
        if breaks.ndim != 1 or breaks.size != n_breaks:
            raise InvalidArgument(
                f"expected {n_breaks} breakpoints for nbasis={nbasis}, degree={degree}"
            )
        if not np.isclose(breaks[0], lo) or not np.isclose(breaks[-1], hi):
            raise InvalidArgument("breakpoints must span rangeval")
        if np.any(np.diff(breaks) <= 0):
            raise InvalidArgument("breakpoints must be strictly increasing")
    knots = np.concatenate([np.full(degree, lo), breaks, np.full(degree, hi)])
    return BasisSystem(
        kind="bspline",
        rangeval=(lo, hi),
        nbasis=nbasis,
        degree=degree,
        knots=tuple(float(k) for k in knots),
    )


def _check_domain(basis: BasisSystem, t: np.ndarray) -> np.ndarray:
    lo, hi = basis.rangeval
    tol = DOMAIN_TOL * max(1.0, abs(lo), abs(hi))
    if t.size and (t.min() < lo - tol or t.max() > hi + tol):
        bad = t[(t < lo - tol) | (t > hi + tol)][0]
        raise OutOfDomain(f"argument {bad} outside basis range [{lo}, {hi}]")
    return np.clip(t, lo, hi)


def eval_basis(basis: BasisSystem, t) -> np.ndarray:
    """Evaluate every basis function at each t: returns the m x p matrix Phi."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if t.ndim != 1:
        raise InvalidArgument(f"t must be 1-D, got shape {t.shape}")
    t = _check_domain(basis, t)
    if basis.kind == "fourier":
        return _eval_fourier(basis, t)
    return _kernels.bspline_design(t, basis.knot_array(), basis.degree)


def _eval_fourier(basis: BasisSystem, t: np.ndarray) -> np.ndarray:
    lo, _ = basis.rangeval
    period = basis.period
    omega = 2.0 * np.pi / period
    phi = np.empty((t.size, basis.nbasis))
    phi[:, 0] = 1.0 / np.sqrt(period)
    amp = np.sqrt(2.0 / period)
    x = t - lo
    for k in range(1, (basis.nbasis - 1) // 2 + 1):
        phi[:, 2 * k - 1] = amp * np.sin(omega * k * x)
        phi[:, 2 * k] = amp * np.cos(omega * k * x)
    return phi


@dataclass(frozen=True)
class GramMatrix:
    """Matrix of pairwise inner products of the basis functions over the range."""

    psi: np.ndarray


def gram_matrix(basis: BasisSystem) -> GramMatrix:
    """Inner products psi_jk = integral of phi_j phi_k over the range.

    Fourier with period equal to the range width is orthonormal, so the
    identity is returned analytically. B-spline Grams use Gauss-Legendre
    with degree + 1 nodes per inter-knot interval, which integrates the
    piecewise degree-2d integrand exactly. A Fourier basis with an
    overridden period falls back to a 10 * nbasis node rule on the range.
    """
    lo, hi = basis.rangeval
    if basis.kind == "fourier":
        if math.isclose(basis.period, hi - lo, rel_tol=1e-12):
            return GramMatrix(psi=np.eye(basis.nbasis))
        rule = gauss_legendre(10 * basis.nbasis, lo, hi)
        phi = eval_basis(basis, rule.nodes)
        psi = phi.T @ (rule.weights[:, None] * phi)
        return GramMatrix(psi=0.5 * (psi + psi.T))
    breaks = np.unique(basis.knot_array())
    psi = np.zeros((basis.nbasis, basis.nbasis))
    for a, b in zip(breaks[:-1], breaks[1:]):
        rule = gauss_legendre(basis.degree + 1, a, b)
        phi = eval_basis(basis, rule.nodes)
        psi += phi.T @ (rule.weights[:, None] * phi)
    return GramMatrix(psi=0.5 * (psi + psi.T))


def basis_to_dict(basis: BasisSystem) -> dict:
    """JSON-friendly description used by the CLI config."""
    out: dict = {"kind": basis.kind, "rangeval": list(basis.rangeval), "nbasis": basis.nbasis}
    if basis.kind == "bspline":
        out["degree"] = basis.degree
    else:
        out["period"] = basis.period
    return out


def basis_from_dict(spec: dict) -> BasisSystem:
    """Inverse of :func:`basis_to_dict`; validates the description."""
    if not isinstance(spec, dict):
        raise InvalidArgument("basis spec must be an object")
    kind = spec.get("kind")
    missing = {"kind", "rangeval", "nbasis"} - spec.keys()
    if missing:
        raise InvalidArgument(f"basis spec missing fields: {sorted(missing)}")
    if kind == "fourier":
        return create_fourier(spec["rangeval"], spec["nbasis"], spec.get("period"))
    if kind == "bspline":
        return create_bspline(spec["rangeval"], spec["nbasis"], spec.get("degree", 3))
    raise InvalidArgument(f"unknown basis kind {kind!r}")
