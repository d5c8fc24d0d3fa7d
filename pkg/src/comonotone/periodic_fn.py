"""2pi-periodic function models, the cutoff bump G and derivative plumbing.

Every model exposes ``f(x)`` and analytic derivatives up to a declared order.
Most models are jet based (see :mod:`comonotone.jets`), so one evaluation
yields all derivative orders.  Orders above the analytic budget fall back to
Richardson-extrapolated central differences of the highest analytic one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Sequence

import numpy as np

from .errors import UnsupportedOrder
from .jets import Jet, cos_affine, sin_affine, trig_jet
from .trig_poly import ExtremaCycle, TrigPolynomial, pi_product

TWO_PI = 2.0 * np.pi
BUMP_MAX_ORDER = 6
FD_BUDGET = 6
EPS = np.finfo(float).eps

Evaluator = Callable[[np.ndarray], np.ndarray]


def wrap(x):
    """Map x into [-pi, pi)."""
    return np.mod(np.asarray(x, dtype=float) + np.pi, TWO_PI) - np.pi


# -- the bump G --------------------------------------------------------------

def bump_jet(x, order: int = BUMP_MAX_ORDER) -> Jet:
    """Jet of G(x) = psi(|x|-1) / (psi(|x|-1) + psi(2-|x|)), psi(t) = exp(-1/t)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    t = np.abs(x)
    c = np.zeros((order + 1, x.size))
    c[0, t >= 2.0] = 1.0
    mid = (t > 1.0) & (t < 2.0)
    if np.any(mid):
        u = Jet.variable(t[mid] - 1.0, order)
        psi_u = (-u.reciprocal()).exp()
        psi_v = (-(1.0 - u).reciprocal()).exp()
        q = psi_u / (psi_u + psi_v)
        sgn = np.sign(x[mid])
        for k in range(order + 1):
            c[k, mid] = q.c[k] * sgn ** k
    return Jet(c)


def bump_derivatives(x, order: int = BUMP_MAX_ORDER) -> np.ndarray:
    """Rows G, G', ..., G^(order) at the points x."""
    if order > BUMP_MAX_ORDER:
        raise UnsupportedOrder("bump derivatives are provided up to order %d" % BUMP_MAX_ORDER)
    return bump_jet(x, order).derivatives()


def eval_bump(x):
    """G(x): 0 on |x| <= 1, 1 on |x| >= 2, smooth and monotone in |x| between."""
    val = bump_jet(x, 0).c[0]
    return val if np.ndim(x) else float(val[0])


# -- models ------------------------------------------------------------------

@dataclass
class PeriodicFunctionModel:
    """A 2pi-periodic function with analytic derivatives f', ..., f^(d).

    ``jet`` is an optional fast path ``jet(x, order) -> Jet``.  ``focus`` lists
    ``(center, radius)`` windows holding fine-scale features; sup and modulus
    computations refine their grids there.  ``breakpoints`` are points where
    the function is less smooth (quadrature and grids include them).
    """

    evaluator: Evaluator
    analytic_derivatives: list = field(default_factory=list)
    max_analytic_order: int = 0
    label: str = ""
    jet: Callable | None = None
    focus: list = field(default_factory=list)
    breakpoints: list = field(default_factory=list)

    def __call__(self, x):
        return self.evaluator(x)

    def deriv(self, order: int) -> Evaluator:
        """Evaluator of f^(order) (analytic or finite difference)."""
        if order == 0:
            return self.evaluator
        if order <= self.max_analytic_order:
            return self.analytic_derivatives[order - 1]
        return lambda x: derivative(self, order, x)

    def all_derivatives(self, x, order: int) -> np.ndarray:
        """Rows f, f', ..., f^(order) at x (order <= max_analytic_order)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.jet is not None:
            return self.jet(x, order).derivatives()
        return np.vstack([np.asarray(self.deriv(j)(x), dtype=float) for j in range(order + 1)])

    def sample_grid(self, count: int = 4096, focus_count: int = 512) -> np.ndarray:
        """Uniform period grid plus dense windows around focus points."""
        parts = [-np.pi + TWO_PI * np.arange(count) / count]
        for center, radius in self.focus:
            parts.append(wrap(np.linspace(center - radius, center + radius, focus_count)))
        parts.append(wrap(np.asarray(self.breakpoints, dtype=float)))
        return np.unique(np.concatenate(parts))

    def sup_norm(self, order: int = 0, count: int = 4096) -> float:
        x = self.sample_grid(count)
        return float(np.max(np.abs(self.deriv(order)(x))))


def _from_jet(jet_fn, order: int, label: str, value_fn=None, deriv_jet=None,
              **kw) -> PeriodicFunctionModel:
    """Model from a jet function.

    ``deriv_jet`` (the jet of f') lets derivative evaluators skip computing
    f itself, which matters when f needs quadrature.
    """
    def make(j):
        if deriv_jet is not None and j >= 1:
            return lambda x: _squeeze(x, deriv_jet(np.atleast_1d(x), j - 1).derivatives()[j - 1])
        return lambda x: _squeeze(x, jet_fn(np.atleast_1d(x), j).derivatives()[j])

    evaluator = value_fn or make(0)
    derivs = [make(j) for j in range(1, order + 1)]
    return PeriodicFunctionModel(evaluator, derivs, order, label, jet=jet_fn, **kw)


def _squeeze(x, val):
    return val if np.ndim(x) else float(val[0])


def trig_model(T: TrigPolynomial, label: str = "", order: int = 8) -> PeriodicFunctionModel:
    """A trigonometric polynomial as a model (all orders exact)."""
    return _from_jet(lambda x, k: trig_jet(T, x, k), order, label or "trig")


def sin_model() -> PeriodicFunctionModel:
    return trig_model(TrigPolynomial(2, 0.0, [0.0], [1.0]), "sin")


def cos_model() -> PeriodicFunctionModel:
    return trig_model(TrigPolynomial(2, 0.0, [1.0], [0.0]), "cos")


def cutoff_jet(tau: TrigPolynomial, b: float):
    """Jet function of x -> G(wrap(x)/b) * tau(x) (Leibniz with exact tau)."""
    def jet(x, order):
        if order > BUMP_MAX_ORDER:
            raise UnsupportedOrder("cutoff models support derivatives up to order %d" % BUMP_MAX_ORDER)
        x = np.atleast_1d(np.asarray(x, dtype=float))
        g = bump_jet(wrap(x) / b, order)
        scale = np.array([b ** -k for k in range(order + 1)])
        g = Jet(g.c * scale[:, None])
        return g * trig_jet(tau, x, order)
    return jet


def cutoff_product_model(tau: TrigPolynomial, b: float, label: str = "") -> PeriodicFunctionModel:
    """G(x/b) * tau(x) on [-pi, pi), extended periodically (needs 2b < pi)."""
    if not 0.0 < 2.0 * b < np.pi:
        raise ValueError("cutoff scale must satisfy 0 < 2b < pi")
    return _from_jet(cutoff_jet(tau, b), BUMP_MAX_ORDER, label or "G(x/b)tau",
                     focus=[(0.0, 2.5 * b)], breakpoints=[-2 * b, -b, b, 2 * b])


# -- quadrature ----------------------------------------------------------------

class PanelIntegrator:
    """Cumulative integral x -> int_origin^x g on [lo, hi] by composite Gauss-Legendre.

    Panels are uniform, split at ``breakpoints`` and geometrically graded
    toward ``singular`` points so endpoint singularities integrate to near
    machine precision.
    """

    def __init__(self, func: Evaluator, lo: float, hi: float, *, panels: int = 256,
                 nodes: int = 20, breakpoints: Sequence[float] = (),
                 singular: Sequence[float] = (), origin: float | None = None,
                 grading: float = 0.15, levels: int = 14):
        self.func = func
        self.lo, self.hi = float(lo), float(hi)
        edges = set(np.linspace(lo, hi, panels + 1).tolist())
        width = (hi - lo) / panels
        for p in list(breakpoints) + list(singular):
            if lo < p < hi:
                edges.add(float(p))
        for p in singular:
            for lev in range(1, levels + 1):
                d = width * grading ** lev
                for q in (p - d, p + d):
                    if lo < q < hi:
                        edges.add(float(q))
        self.edges = np.array(sorted(edges))
        self.xi, self.wi = np.polynomial.legendre.leggauss(nodes)
        left, right = self.edges[:-1], self.edges[1:]
        vals = self._panel(left, right)
        self.cum = np.concatenate(([0.0], np.cumsum(vals)))
        self.offset = 0.0
        if origin is not None:
            self.offset = float(self._raw(np.array([origin]))[0])

    def _panel(self, left, right):
        half = 0.5 * (right - left)
        pts = (left + half)[:, None] + half[:, None] * self.xi[None, :]
        vals = np.asarray(self.func(pts.ravel()), dtype=float).reshape(pts.shape)
        return half * (vals @ self.wi)

    def _raw(self, x):
        x = np.clip(x, self.lo, self.hi)
        k = np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, len(self.edges) - 2)
        return self.cum[k] + self._panel(self.edges[k], x)

    def __call__(self, x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        val = self._raw(xa) - self.offset
        return _squeeze(x, val)

    @property
    def total(self) -> float:
        return float(self.cum[-1])


def cutoff_antiderivative_model(tau: TrigPolynomial, b: float,
                                label: str = "") -> PeriodicFunctionModel:
    """F(x) = int_0^x G(t/b) tau(t) dt for odd tau.

    Written as F = (Tau - Tau(0)) + D with Tau the exact zero-mean
    antiderivative of tau and D(x) = int_0^x (G(t/b) - 1) tau(t) dt, which is
    constant for |x| >= 2b; only D needs quadrature.
    """
    if abs(tau.c0) > 0.0 or np.any(tau.a != 0.0):
        raise ValueError("tau must be odd (sine terms only) for a periodic antiderivative")
    big_tau = tau.antiderivative()
    tau0 = big_tau(0.0)
    f_jet = cutoff_jet(tau, b)
    corr = PanelIntegrator(lambda t: (eval_bump(t / b) - 1.0) * tau(t), -2 * b, 2 * b,
                           panels=64, nodes=24, breakpoints=(-b, 0.0, b), origin=0.0)

    def value(x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        return _squeeze(x, big_tau(xa) - tau0 + corr(wrap(xa)))

    def jet(x, order):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        c = np.zeros((order + 1, x.size))
        c[0] = value(x)
        if order >= 1:
            inner = f_jet(x, order - 1)
            for k in range(1, order + 1):
                c[k] = inner.c[k - 1] / k
        return Jet(c)

    model = _from_jet(jet, BUMP_MAX_ORDER + 1, label or "int G(t/b)tau", value_fn=value,
                      deriv_jet=f_jet,
                      focus=[(0.0, 2.5 * b)], breakpoints=[-2 * b, -b, b, 2 * b])
    model.big_tau = big_tau - tau0
    return model


# -- comonotone corpus models ---------------------------------------------------

def pi_jet(Y: ExtremaCycle, x, order: int) -> Jet:
    out = None
    for y in Y.points:
        fac = sin_affine(x, 0.5, -0.5 * y, order)
        out = fac if out is None else out * fac
    return out


def abs_sin_power_jet(x, x0: float, gamma: float, order: int) -> Jet:
    """Jet of |sin((x - x0)/2)|^gamma; columns at the zero are set to 0."""
    s = sin_affine(x, 0.5, -0.5 * x0, order)
    sgn = np.sign(s.c[0])
    zero = np.abs(s.c[0]) < 1e-300
    sgn[zero] = 1.0
    base = Jet(s.c * sgn[None, :])
    base.c[0, zero] = 1.0
    out = base.power(gamma)
    out.c[:, zero] = 0.0
    return out


@dataclass
class WeightSpec:
    """w(x) = 1 + a cos(j (x - phase)) + eps |sin((x - x0)/2)|^gamma."""

    a: float
    freq: int
    phase: float
    eps: float
    x0: float
    gamma: float


def comonotone_model(Y: ExtremaCycle, gamma: float = 1.5, x0: float | None = None,
                     eps: float = 0.5, order: int = 8, label: str = "") -> PeriodicFunctionModel:
    """A member of Delta^(1)(Y) with derivative anchor * Pi(x) * w(x), w > 0.

    The weight carries a |sin((x-x0)/2)|^gamma term, so f^(r) has a
    singularity of Hoelder order gamma + 1 - r at x0; the cosine term is
    tuned so that f' has zero mean and f is periodic.
    """
    pts = Y.array
    if x0 is None:
        # midpoint of the widest gap between consecutive extrema
        ext = np.concatenate((pts, [pts[0] + TWO_PI]))
        i = int(np.argmax(np.diff(ext)))
        x0 = float(wrap(ext[i] + 0.45 * (ext[i + 1] - ext[i])))

    def pw(x, w):
        return Y.anchor * pi_jet(Y, x, 0).c[0] * w

    quad = dict(panels=512, nodes=20, singular=(x0,))
    sing = lambda x: np.abs(np.sin(0.5 * (x - x0))) ** gamma
    j0 = PanelIntegrator(lambda x: pw(x, 1.0), -np.pi, np.pi, **quad).total
    js = PanelIntegrator(lambda x: pw(x, sing(x)), -np.pi, np.pi, **quad).total
    best = None
    for freq in range(1, Y.s + 1):
        ic = PanelIntegrator(lambda x: pw(x, np.cos(freq * x)), -np.pi, np.pi, **quad).total
        isn = PanelIntegrator(lambda x: pw(x, np.sin(freq * x)), -np.pi, np.pi, **quad).total
        amp = np.hypot(ic, isn)
        if best is None or amp > best[0]:
            best = (amp, freq, np.arctan2(isn, ic) / freq)
    amp, freq, phase = best
    if amp < 1e-12:
        raise ValueError("cannot balance the weight for this cycle")
    while True:
        a = -(j0 + eps * js) / amp
        if abs(a) + 1e-12 < 1.0 and abs(a) <= 0.95:
            break
        eps *= 0.5
        if eps < 1e-6:
            raise ValueError("cannot balance the weight for this cycle")
    spec = WeightSpec(a, freq, phase, eps, x0, gamma)

    def fprime_jet(x, k):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        w = cos_affine(x, freq, -freq * phase, k) * a + 1.0
        w = w + abs_sin_power_jet(x, x0, gamma, k) * eps
        return pi_jet(Y, x, k) * w * float(Y.anchor)

    integ = PanelIntegrator(lambda x: fprime_jet(x, 0).c[0], -np.pi, np.pi, **quad)

    def value(x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        return _squeeze(x, integ(wrap(xa)))

    def jet(x, k):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        c = np.zeros((k + 1, x.size))
        c[0] = value(x)
        if k >= 1:
            inner = fprime_jet(x, k - 1)
            for i in range(1, k + 1):
                c[i] = inner.c[i - 1] / i
        return Jet(c)

    model = _from_jet(jet, order, label or "comonotone(s=%d,gamma=%g)" % (Y.s, gamma),
                      value_fn=value, deriv_jet=fprime_jet, focus=[(x0, 0.05)], breakpoints=[x0])
    model.weight = spec
    model.cycle = Y
    model.period_defect = integ.total
    return model


def clustered_model(Y: ExtremaCycle, order: int = 8, label: str = "") -> PeriodicFunctionModel:
    """A member of Delta^(1)(Y) for a cycle whose points sit in a short arc.

    f' = anchor * Pi * (1 + A K) with K = exp(kappa (cos(x - c) - 1)) a
    narrow kernel centred in a gap where anchor * Pi < 0.  When the extrema
    are clustered, Pi keeps one sign on most of the period, so the mean of
    f' can only vanish if the weight is large inside the cluster.
    """
    pts = Y.array
    ext = np.concatenate((pts, [pts[0] + TWO_PI]))
    gaps = np.diff(ext)
    mids = ext[:-1] + 0.5 * gaps
    neg = Y.anchor * pi_product(Y, mids) < 0
    i = int(np.argmax(np.where(neg, gaps, -np.inf)))
    c, half = float(wrap(mids[i])), 0.5 * float(gaps[i])
    quad = dict(panels=512, nodes=20)
    pw = lambda x, w: Y.anchor * pi_product(Y, x) * w
    j0 = PanelIntegrator(lambda x: pw(x, 1.0), -np.pi, np.pi, **quad).total
    kappa = 1.0 / half ** 2
    for _ in range(40):
        kern = lambda x, kap=kappa: np.exp(kap * (np.cos(x - c) - 1.0))
        jk = PanelIntegrator(lambda x: pw(x, kern(x)), -np.pi, np.pi,
                             breakpoints=tuple(wrap(np.array([c - half, c, c + half]))),
                             **quad).total
        if jk * j0 < 0:
            break
        kappa *= 2.0
    else:
        raise ValueError("cannot balance the weight for this cycle")
    amp = -j0 / jk

    def fprime_jet(x, k):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        K = ((cos_affine(x, 1.0, -c, k) - 1.0) * kappa).exp()
        return pi_jet(Y, x, k) * (K * amp + 1.0) * float(Y.anchor)

    integ = PanelIntegrator(lambda x: fprime_jet(x, 0).c[0], -np.pi, np.pi,
                            breakpoints=tuple(pts), **quad)

    def value(x):
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        return _squeeze(x, integ(wrap(xa)))

    def jet(x, k):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros((k + 1, x.size))
        out[0] = value(x)
        if k >= 1:
            inner = fprime_jet(x, k - 1)
            for i in range(1, k + 1):
                out[i] = inner.c[i - 1] / i
        return Jet(out)

    span = float(TWO_PI - gaps.max())  # shortest arc holding the cycle
    model = _from_jet(jet, order, label or "clustered(s=%d)" % Y.s, value_fn=value,
                      deriv_jet=fprime_jet, focus=[(c, max(span, half))], breakpoints=[])
    model.cycle = Y
    model.period_defect = integ.total
    model.kernel = (c, kappa, amp)
    return model


# -- derivatives ---------------------------------------------------------------

def fd_step(order: int, x) -> np.ndarray:
    return EPS ** (1.0 / (order + 4)) * (1.0 + np.abs(x))


def _central(g: Evaluator, m: int, x, h):
    acc = 0.0
    for i in range(m + 1):
        acc = acc + (-1) ** i * comb(m, i) * np.asarray(g(x + (0.5 * m - i) * h), dtype=float)
    return acc / h ** m


def derivative(model: PeriodicFunctionModel, order: int, x):
    """f^(order)(x): analytic when available, else Richardson central differences.

    The finite-difference path differentiates the highest analytic derivative
    ``order - d`` more times with steps h and h/2; the extrapolated error is
    O(h^4).
    """
    if order < 0:
        raise UnsupportedOrder("negative derivative order")
    d = model.max_analytic_order
    if order <= d:
        return model.deriv(order)(x)
    m = order - d
    if m > FD_BUDGET:
        raise UnsupportedOrder("order %d exceeds analytic order %d + budget %d" % (order, d, FD_BUDGET))
    base = model.deriv(d)
    xa = np.asarray(x, dtype=float)
    h = fd_step(m, xa)
    coarse = _central(base, m, xa, h)
    fine = _central(base, m, xa, 0.5 * h)
    est = (4.0 * fine - coarse) / 3.0
    return est if xa.ndim else float(est)


def fd_only_model(model: PeriodicFunctionModel) -> PeriodicFunctionModel:
    """The same function with its analytic derivatives stripped."""
    return PeriodicFunctionModel(model.evaluator, [], 0, model.label + " [fd]",
                                 focus=model.focus, breakpoints=model.breakpoints)


# -- invariants -----------------------------------------------------------------

def periodicity_defect(model: PeriodicFunctionModel, count: int = 256, seed: int = 0) -> float:
    """max |f(x + 2pi) - f(x)| / (1 + ||f||) over random points."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-np.pi, np.pi, count)
    diff = np.abs(np.asarray(model(x + TWO_PI)) - np.asarray(model(x)))
    return float(np.max(diff) / (1.0 + model.sup_norm(0, 1024)))


def derivative_defect(model: PeriodicFunctionModel, order: int, count: int = 64,
                      seed: int = 0) -> float:
    """max |analytic f^(j) - central difference of f^(j-1)| / (1 + ||f^(j)||)."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-np.pi, np.pi, count)
    lower = PeriodicFunctionModel(model.deriv(order - 1), [], 0)
    fd = derivative(lower, 1, x)
    exact = np.asarray(model.deriv(order)(x))
    return float(np.max(np.abs(fd - exact)) / (1.0 + model.sup_norm(order, 1024)))
