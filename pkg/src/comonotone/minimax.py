"""Discretized Chebyshev approximation by linear programming.

All three problems minimise the grid sup error ``eps``:

* ``best_unconstrained`` - trigonometric polynomials of degree < n;
* ``best_comonotone``    - the same plus ``sign(anchor * Pi(x_g)) T'(x_g) >= 0``;
* ``best_algebraic``     - algebraic polynomials of degree < m on [a, b].

The trigonometric programs are solved in residual form: a least-squares fit
``T0`` is computed first and the LP works on the correction ``(T - T0) / S``
with ``S = ||f - T0||_grid``.  This keeps the LP well scaled when the optimal
error is many orders of magnitude below ``||f||``.  Values are grid maxima and
therefore lower bounds of the continuous quantities.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import chebyshev as cheb
from scipy.optimize import linprog

from .errors import Infeasible, IterationLimit, Unbounded
from .trig_poly import ExtremaCycle, TrigPolynomial, periodic_grid, pi_product

LP_TOL = 1e-10
PI_TOL = 1e-8


@dataclass
class LPResult:
    x: np.ndarray
    fun: float
    iterations: int
    status: int


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, bounds=None,
             *, tol: float = LP_TOL, max_iter: int = 200000) -> LPResult:
    """min c^T x subject to A_ub x <= b_ub, A_eq x = b_eq and bounds.

    Backed by the HiGHS dual simplex (deterministic).  Variables are free
    unless ``bounds`` says otherwise.
    """
    c = np.asarray(c, dtype=float)
    if bounds is None:
        bounds = [(None, None)] * c.size
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq, bounds=bounds,
                  method="highs-ds",
                  options={"primal_feasibility_tolerance": tol,
                           "dual_feasibility_tolerance": tol,
                           "maxiter": max_iter, "presolve": True})
    if res.status == 2:
        raise Infeasible(res.message)
    if res.status == 3:
        raise Unbounded(res.message)
    if res.status == 1:
        raise IterationLimit(res.message)
    if res.status != 0:
        raise Infeasible("LP solver failed: %s" % res.message)
    nit = int(getattr(res, "nit", 0) or 0)
    return LPResult(np.asarray(res.x), float(res.fun), nit, int(res.status))


@dataclass
class MinimaxSolution:
    polynomial: object
    value: float
    grid_count: int
    constrained: bool
    active_constraint_count: int = 0
    solver_iterations: int = 0
    grid: np.ndarray = field(default=None, repr=False)
    alternation_count: int = 0

    def to_record(self) -> dict:
        poly = self.polynomial
        if hasattr(poly, "to_record"):
            rec = poly.to_record()
        else:
            rec = {"basis": "chebyshev", "domain": [float(d) for d in poly.domain],
                   "coef": [float(c) for c in poly.coef]}
        return {"polynomial": rec, "value": self.value, "grid_count": self.grid_count,
                "constrained": self.constrained,
                "active_constraint_count": self.active_constraint_count,
                "solver_iterations": self.solver_iterations}


def trig_grid(n: int, grid_count: int | None = None, Y: ExtremaCycle | None = None,
              extra=()) -> np.ndarray:
    """Uniform grid of max(512, 32n) points plus the cycle and extra points."""
    count = grid_count or max(512, 32 * n)
    parts = [periodic_grid(count), np.asarray(extra, dtype=float)]
    if Y is not None:
        parts.append(Y.array)
        parts.append(cycle_refinement(Y, count))
    x = np.concatenate(parts)
    x = np.mod(x + np.pi, 2 * np.pi) - np.pi
    return np.unique(x)


def cycle_refinement(Y: ExtremaCycle, count: int, per_gap: int = 8) -> np.ndarray:
    """Points between and just beside the extrema.

    Extrema closer together than the uniform spacing would otherwise have no
    constraint point between them, and the sign pattern there would go
    unenforced.
    """
    spacing = 2 * np.pi / count
    y = Y.array
    ext = np.concatenate(([y[-1] - 2 * np.pi], y, [y[0] + 2 * np.pi]))
    pts = []
    for i in range(1, len(ext) - 1):
        for gap in (ext[i] - ext[i - 1], ext[i + 1] - ext[i]):
            if gap < 4 * spacing:
                frac = np.arange(1, per_gap) / per_gap
                pts.append(ext[i] - frac * gap if gap == ext[i] - ext[i - 1] else ext[i] + frac * gap)
        d = min(ext[i] - ext[i - 1], ext[i + 1] - ext[i], spacing)
        pts.append(ext[i] + d * np.array([-0.5, -0.25, -0.1, 0.1, 0.25, 0.5]))
    return np.concatenate(pts) if pts else np.zeros(0)


def trig_design(n: int, x: np.ndarray, derivative: bool = False) -> np.ndarray:
    """Columns [1, cos jx, sin jx] (or their derivatives) at x."""
    j = np.arange(1, n)
    ph = np.multiply.outer(x, j)
    if derivative:
        return np.hstack((np.zeros((x.size, 1)), -np.sin(ph) * j, np.cos(ph) * j))
    return np.hstack((np.ones((x.size, 1)), np.cos(ph), np.sin(ph)))


def _sample(f, x):
    return np.asarray(f(x), dtype=float)


def alternation_count(err: np.ndarray, tol: float) -> int:
    """Number of sign alternations among near-extremal grid errors."""
    peak = np.max(np.abs(err))
    idx = np.flatnonzero(np.abs(err) >= peak - tol)
    if idx.size == 0:
        return 0
    signs = np.sign(err[idx])
    return 1 + int(np.count_nonzero(signs[1:] != signs[:-1]))


def _chebyshev_trig(f, n, x, fx, cons_rows=None, cons_rhs=None):
    A = trig_design(n, x)
    c_ref, *_ = np.linalg.lstsq(A, fx, rcond=None)
    resid = fx - A @ c_ref
    scale = float(np.max(np.abs(resid)))
    nv = A.shape[1]
    if scale == 0.0 and cons_rows is None:
        return c_ref, 0.0, 0, 0
    if scale == 0.0:
        scale = 1.0
    ones = np.ones((x.size, 1))
    rows = [np.hstack((-A, -ones)), np.hstack((A, -ones))]
    rhs = [-resid / scale, resid / scale]
    if cons_rows is not None and cons_rows.shape[0]:
        # sigma * (T0' + S d)' >= 0  ->  -sigma * D' d <= sigma * T0' / S
        rows.append(np.hstack((-cons_rows, np.zeros((cons_rows.shape[0], 1)))))
        rhs.append((cons_rows @ c_ref) / scale)
    A_ub = np.vstack(rows)
    b_ub = np.concatenate(rhs)
    cost = np.zeros(nv + 1)
    cost[-1] = 1.0
    res = solve_lp(cost, A_ub, b_ub)
    d = res.x[:nv]
    coef = c_ref + scale * d
    active = 0
    if cons_rows is not None and cons_rows.shape[0]:
        slack = cons_rows @ coef
        active = int(np.count_nonzero(slack <= 1e-9 * max(1.0, np.max(np.abs(slack)))))
    return coef, scale * res.x[-1], res.iterations, active


def best_unconstrained(f, n: int, grid_count: int | None = None, extra=()) -> MinimaxSolution:
    """Discrete E_n(f): best trigonometric polynomial of degree < n on the grid."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = trig_grid(n, grid_count, extra=_extra_points(f, extra))
    fx = _sample(f, x)
    coef, _, nit, _ = _chebyshev_trig(f, n, x, fx)
    T = TrigPolynomial.from_coefficient_vector(n, coef)
    err = fx - T(x)
    value = float(np.max(np.abs(err)))
    return MinimaxSolution(T, value, x.size, False, 0, nit, x,
                           alternation_count(err, 1e-6 * max(value, 1e-300)))


def constraint_rows(Y: ExtremaCycle, n: int, x: np.ndarray, pi_tol: float = PI_TOL):
    """Rows sigma_g * d/dx [1, cos, sin](x_g) at points where sign Pi is defined.

    A point is skipped when one factor sin((x - y_i)/2) is below ``pi_tol``
    times the grid spacing scale, i.e. the point numerically sits on an
    extremum.  The test is per factor: near clustered extrema |Pi| itself is
    a product of several small sines and a threshold on |Pi| would drop the
    very constraints that carry the clustering.
    """
    factors = np.abs(np.sin(0.5 * np.subtract.outer(x, Y.array)))
    keep = np.min(factors, axis=1) > pi_tol * 1e-4
    pv = pi_product(Y, x[keep])
    sigma = Y.anchor * np.sign(pv)
    return trig_design(n, x[keep], derivative=True) * sigma[:, None], x[keep]


def best_comonotone(f, Y: ExtremaCycle, n: int, grid_count: int | None = None,
                    extra=(), pi_tol: float = PI_TOL) -> MinimaxSolution:
    """Discrete E_n^(1)(f, Y): a lower bound of the comonotone best error."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = trig_grid(n, grid_count, Y, extra=_extra_points(f, extra))
    fx = _sample(f, x)
    rows, _ = constraint_rows(Y, n, x, pi_tol)
    coef, _, nit, active = _chebyshev_trig(f, n, x, fx, rows, None)
    T = TrigPolynomial.from_coefficient_vector(n, coef)
    err = fx - T(x)
    value = float(np.max(np.abs(err)))
    return MinimaxSolution(T, value, x.size, True, active, nit, x,
                           alternation_count(err, 1e-6 * max(value, 1e-300)))


def _extra_points(f, extra):
    pts = [np.asarray(extra, dtype=float)]
    for center, radius in getattr(f, "focus", ()) or ():
        pts.append(np.linspace(center - radius, center + radius, 129))
    bps = getattr(f, "breakpoints", ()) or ()
    if len(bps):
        pts.append(np.asarray(bps, dtype=float))
    return np.concatenate(pts)


def best_algebraic(f, a: float, b: float, m: int, grid_count: int | None = None,
                   values=None) -> MinimaxSolution:
    """Discrete best approximation of f on [a, b] by polynomials of degree < m.

    Uses a Chebyshev-distributed grid of max(257, 32 m + 1) points (odd, so
    the midpoint is included).  The result is a ``numpy.polynomial.Chebyshev``
    with domain [a, b], which stays well conditioned on short intervals far
    from the origin.
    """
    if not b > a or m < 1:
        raise ValueError("need a < b and m >= 1")
    count = grid_count or max(257, 32 * m + 1)
    k = np.arange(count)
    u = -np.cos(np.pi * k / (count - 1))
    x = a + 0.5 * (b - a) * (u + 1.0)
    fx = _sample(f, x) if values is None else np.asarray(values, dtype=float)
    V = cheb.chebvander(u, m - 1)
    c_ref, *_ = np.linalg.lstsq(V, fx, rcond=None)
    resid = fx - V @ c_ref
    scale = float(np.max(np.abs(resid)))
    nit = 0
    if scale > 0.0:
        ones = np.ones((count, 1))
        A_ub = np.vstack((np.hstack((-V, -ones)), np.hstack((V, -ones))))
        b_ub = np.concatenate((-resid / scale, resid / scale))
        cost = np.zeros(m + 1)
        cost[-1] = 1.0
        res = solve_lp(cost, A_ub, b_ub)
        c_ref = c_ref + scale * res.x[:m]
        nit = res.iterations
    poly = cheb.Chebyshev(c_ref, domain=[a, b])
    err = fx - poly(x)
    value = float(np.max(np.abs(err)))
    return MinimaxSolution(poly, value, count, False, 0, nit, x,
                           alternation_count(err, 1e-6 * max(value, 1e-300)))
