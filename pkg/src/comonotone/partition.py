"""Uniform partitions, local comonotone polynomials and the stitched spline S.

The period is cut into cells of width h = pi/n.  Every extremum y_i covers
its own cell and both neighbours; the connected runs of covered cells are
the components O_mu.  On a component a local polynomial sharing the
monotonicity pattern of f is built, on every other cell a monotone
interpolant, and the pieces are glued by integrating their derivatives from
the left end of the frame.

Local pieces are ``numpy.polynomial.Chebyshev`` objects whose domain is the
piece interval, so evaluation stays well conditioned on cells of width 1e-2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial

import numpy as np
from numpy.polynomial import Chebyshev

from .errors import HypothesisViolation, NotMonotone, RegimeUnsupported, TooFewCells
from .minimax import best_algebraic, best_comonotone
from .smoothness import Resolution, modulus_circle, modulus_interval
from .trig_poly import ExtremaCycle, pi_product

TWO_PI = 2.0 * np.pi
SIGN_TOL = 1e-9
LOCAL_RES = Resolution(h_count=16, x_count=256)


# -- data types ----------------------------------------------------------------

@dataclass
class Component:
    a: float
    b: float
    knots: np.ndarray  # extrema inside (a, b), frame coordinates, increasing
    cells: int

    @property
    def nu(self) -> int:
        return int(self.knots.size)


@dataclass
class Partition:
    n: int
    s: int
    h: float
    origin: float  # left end of the frame [origin, origin + 2 pi]
    breakpoints: np.ndarray  # x_j inside the frame
    components: list
    outside_cells: list
    rotation_cells: int = 0

    @property
    def single_component(self) -> bool:
        return len(self.components) == 1


@dataclass
class PiNu:
    knots: np.ndarray

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.prod(np.subtract.outer(x, np.asarray(self.knots)), axis=-1) if len(self.knots) \
            else np.ones_like(x)

    def polynomial(self, a: float, b: float) -> Chebyshev:
        p = Chebyshev([1.0], domain=[a, b])
        x = Chebyshev([0.5 * (a + b), 0.5 * (b - a)], domain=[a, b])
        for t in self.knots:
            p = p * (x - t)
        return p


@dataclass
class PiecewisePolynomial:
    """Pieces on [breakpoints[i], breakpoints[i+1]], each a Chebyshev series.

    With ``origin`` set, arguments outside [origin, origin + 2 pi] are
    wrapped into that frame before evaluation.
    """

    breakpoints: np.ndarray
    pieces: list
    degree_bound: int
    origin: float | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.breakpoints = np.asarray(self.breakpoints, dtype=float)
        if len(self.pieces) != self.breakpoints.size - 1:
            raise ValueError("need one piece per interval")
        if np.any(np.diff(self.breakpoints) <= 0):
            raise ValueError("breakpoints must increase")

    def _frame(self, x):
        if self.origin is None:
            return x
        lo = self.origin
        out = (x < lo) | (x > lo + TWO_PI)
        return np.where(out, lo + np.mod(x - lo, TWO_PI), x)

    def locate(self, x) -> np.ndarray:
        idx = np.searchsorted(self.breakpoints, x, side="right") - 1
        return np.clip(idx, 0, len(self.pieces) - 1)

    def __call__(self, x):
        xa = self._frame(np.atleast_1d(np.asarray(x, dtype=float)))
        idx = self.locate(xa)
        out = np.empty_like(xa)
        for i in np.unique(idx):
            sel = idx == i
            out[sel] = self.pieces[i](xa[sel])
        return out if np.ndim(x) else float(out[0])

    def derivative(self) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.breakpoints, [p.deriv() for p in self.pieces],
                                   max(self.degree_bound - 1, 1), self.origin)

    def continuity_defect(self) -> float:
        """Largest jump at interior breakpoints, relative to max(1, |S|)."""
        if len(self.pieces) < 2:
            return 0.0
        xb = self.breakpoints[1:-1]
        left = np.array([p(x) for p, x in zip(self.pieces[:-1], xb)])
        right = np.array([p(x) for p, x in zip(self.pieces[1:], xb)])
        scale = max(1.0, float(np.max(np.abs(left))))
        return float(np.max(np.abs(left - right)) / scale)

    def to_record(self) -> dict:
        return {"breakpoints": self.breakpoints.tolist(),
                "pieces": [{"domain": [float(d) for d in p.domain], "coef": p.coef.tolist()}
                           for p in self.pieces],
                "degree_bound": self.degree_bound, "origin": self.origin}

    @classmethod
    def from_record(cls, rec: dict) -> "PiecewisePolynomial":
        pieces = [Chebyshev(p["coef"], domain=p["domain"]) for p in rec["pieces"]]
        return cls(np.asarray(rec["breakpoints"]), pieces, int(rec["degree_bound"]),
                   rec.get("origin"))

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_json(cls, text: str) -> "PiecewisePolynomial":
        return cls.from_record(json.loads(text))


# -- partition -------------------------------------------------------------------

def build_partition(n: int, Y: ExtremaCycle, strict: bool = True) -> Partition:
    """Cells of width pi/n and the components covering the extrema.

    When a component would straddle +-pi the frame is shifted right by whole
    cells so that it starts at an uncovered cell; ``origin`` records this.
    ``strict=False`` waives the n > 6s gate and only requires one uncovered
    cell, which is all the construction itself needs.
    """
    s = Y.s
    if strict and n <= 6 * s:
        raise TooFewCells("need n > 6s = %d, got %d" % (6 * s, n))
    if n < 2:
        raise TooFewCells("need n >= 2")
    h = np.pi / n
    ncell = 2 * n
    y = Y.array
    j = np.floor(y / h).astype(int)
    cell = np.mod(j + n, ncell)
    covered = np.zeros(ncell, dtype=bool)
    for c in cell:
        covered[np.mod(c + np.arange(-1, 2), ncell)] = True
    if covered.all():
        raise TooFewCells("every cell is covered at n = %d" % n)
    q = 0
    if covered[0] and covered[-1]:
        q = int(np.flatnonzero(~covered)[0])
    origin = -np.pi + q * h
    order = np.mod(np.arange(ncell) + q, ncell)
    cov = covered[order]
    xs = origin + h * np.arange(ncell + 1)
    yf = origin + np.mod(y - origin, TWO_PI)
    components, outside = [], []
    c = 0
    while c < ncell:
        if not cov[c]:
            outside.append((xs[c], xs[c + 1]))
            c += 1
            continue
        e = c
        while e < ncell and cov[e]:
            e += 1
        a, b = xs[c], xs[e]
        knots = np.sort(yf[(yf > a) & (yf < b)])
        components.append(Component(a, b, knots, e - c))
        c = e
    return Partition(n, s, h, origin, xs, components, outside, q)


# -- local pieces ----------------------------------------------------------------

@dataclass
class LocalPiece:
    poly: Chebyshev
    a: float
    b: float
    kind: str
    sign: int = 1
    constant: float = 0.0  # 1.05-inflated correction actually used
    error: float = float("nan")
    bound: float = float("nan")  # the modulus expression without c

    @property
    def ratio(self) -> float:
        if not np.isfinite(self.bound):
            return float("nan")
        if self.bound == 0.0:
            return 0.0 if self.error <= 1e-12 else np.inf
        return self.error / self.bound


def _grid(a, b, count=1001, extra=()):
    x = np.linspace(a, b, count)
    extra = np.asarray(extra, dtype=float)
    if extra.size:
        x = np.unique(np.concatenate((x, extra[(extra >= a) & (extra <= b)])))
    return x


def _deriv(f, order):
    return f.deriv(order) if hasattr(f, "deriv") else None


def _focus(f, a, b):
    pts = []
    for center, radius in getattr(f, "focus", ()) or ():
        for shift in (-TWO_PI, 0.0, TWO_PI):
            lo, hi = center + shift - radius, center + shift + radius
            if hi >= a and lo <= b:
                pts.append(np.linspace(max(lo, a), min(hi, b), 65))
    for bp in getattr(f, "breakpoints", ()) or ():
        for shift in (-TWO_PI, 0.0, TWO_PI):
            if a <= bp + shift <= b:
                pts.append(np.array([bp + shift]))
    return np.concatenate(pts) if pts else np.zeros(0)


def comonotone_sign(fp: np.ndarray, pn: np.ndarray, tol: float = SIGN_TOL) -> int:
    """sigma in {+1, -1} with sigma f' pi_nu >= 0 on the grid, else raise."""
    prod = fp * pn
    scale = max(float(np.max(np.abs(fp))) * float(np.max(np.abs(pn))), 1e-300)
    if np.min(prod) >= -tol * scale:
        return 1
    if np.max(prod) <= tol * scale:
        return -1
    raise HypothesisViolation("f' pi_nu changes sign on [a, b]")


def _measure(piece: LocalPiece, f, r, k, t, a, b, measure, length_pow=None):
    if not measure:
        return piece
    x = _grid(a, b, 2001, _focus(f, a, b))
    piece.error = float(np.max(np.abs(np.asarray(f(x)) - piece.poly(x))))
    g = f if r == 0 else _deriv(f, r)
    om = modulus_interval(g, k, t, a, b, _local_res(f, a, b)).value
    piece.bound = (length_pow if length_pow is not None else t) ** r * om
    return piece


def _local_res(f, a, b):
    return Resolution(LOCAL_RES.h_count, LOCAL_RES.x_count, tuple(_focus(f, a, b)))


def _check_geometry(a, b, knots, h, lo_mult, hi_mult):
    if h is None:
        h = min(knots[0] - a, b - knots[-1], (b - a) / 3.0)
    if not (3 * h <= b - a + 1e-12 and b - a <= hi_mult * h + 1e-12):
        raise HypothesisViolation("need 3h <= b - a <= %g h" % hi_mult)
    if knots[0] < a + h - 1e-12 or knots[-1] > b - h + 1e-12:
        raise HypothesisViolation("knots must lie in [a + h, b - h]")
    if np.any(np.diff(knots) <= 0):
        raise HypothesisViolation("knots must increase")
    return h


def _interp(a, b, nodes, vals) -> Chebyshev:
    return Chebyshev.fit(nodes, vals, len(nodes) - 1, domain=[a, b])


def monotone_piece(f, a: float, b: float, r: int, k: int, sign: int | None = None,
                   measure: bool = True) -> LocalPiece:
    """P of degree < r + k with P(a) = f(a), P(b) = f(b) and sign * P' >= 0.

    p is the best approximation of f' of degree < r + k - 1, lifted by
    1.05 ||f' - p|| so that the antiderivative is monotone, then affinely
    renormalised to hit f(b).
    """
    if r < 1:
        raise ValueError("monotone_piece needs r >= 1")
    fp = _deriv(f, 1)
    x = _grid(a, b, 1001, _focus(f, a, b))
    fpx = np.asarray(fp(x), dtype=float)
    scale = max(float(np.max(np.abs(fpx))), 1e-300)
    if sign is None:
        sign = 1 if np.sum(fpx) >= 0 else -1
    if np.min(sign * fpx) < -SIGN_TOL * scale:
        raise NotMonotone("f' changes sign on [%g, %g]" % (a, b))
    fa, fb = float(f(a)), float(f(b))
    m = r + k - 1
    sol = best_algebraic(fp, a, b, m)
    p = sol.polynomial
    dev = float(np.max(np.abs(fpx - p(x))))
    lift = 1.05 * max(dev, sol.value)
    ptil = p + sign * lift
    Pt = ptil.integ(lbnd=a) + fa
    span = float(Pt(b) - Pt(a))
    if span == 0.0 or fb == fa:
        P = Chebyshev([fa], domain=[a, b])
    else:
        P = fa + (fb - fa) * (Pt - float(Pt(a))) / span
    piece = LocalPiece(P, a, b, "mon", sign, lift)
    return _measure(piece, f, r, k, b - a, a, b, measure)


def comonotone_piece_full(f, a: float, b: float, knots, r: int, h: float | None = None,
                          measure: bool = True) -> LocalPiece:
    """p of degree <= r + 2 with p(a) = f(a) and p' pi_r >= 0 (nu = r extrema).

    p = f(a) + int_a^x L, L interpolating f' at a, t_1..t_r, b.
    """
    t = np.asarray(knots, dtype=float)
    if r < 1 or t.size != r:
        raise HypothesisViolation("need r >= 1 and exactly r knots")
    h = _check_geometry(a, b, t, h, 3, 3 * r)
    fp = _deriv(f, 1)
    x = _grid(a, b, 1001, _focus(f, a, b))
    pn = PiNu(t)
    sign = comonotone_sign(np.asarray(fp(x)), pn(x))
    nodes = np.concatenate(([a], t, [b]))
    L = _interp(a, b, nodes, np.asarray(fp(nodes), dtype=float))
    p = L.integ(lbnd=a) + float(f(a))
    piece = LocalPiece(p, a, b, "full", sign)
    return _measure(piece, f, r, 3, h, a, b, measure)


def comonotone_piece_partial(f, a: float, b: float, knots, r: int, k: int,
                             h: float | None = None, measure: bool = True) -> LocalPiece:
    """p of degree < r + k with p(a) = f(a) and p' pi_nu >= 0, nu <= r - 1.

    L interpolates f' at a, t_1..t_nu and r+k-nu-2 knots stacked in
    [b - h, b]; the correction lambda pi_nu uses the measured
    lambda = 1.05 max |f' - L| / |pi_nu|.
    """
    t = np.asarray(knots, dtype=float)
    nu = t.size
    if r < 2 or not 1 <= nu <= r - 1:
        raise HypothesisViolation("need r >= 2 and 1 <= nu <= r - 1")
    h = _check_geometry(a, b, t, h, 3, 3 * nu)
    fp = _deriv(f, 1)
    x = _grid(a, b, 2001, _focus(f, a, b))
    pn = PiNu(t)
    pnx = pn(x)
    fpx = np.asarray(fp(x), dtype=float)
    sign = comonotone_sign(fpx, pnx)
    extra = r + k - nu - 2
    stacked = b - h + np.arange(1, extra + 1) * h / extra if extra > 0 else np.zeros(0)
    nodes = np.concatenate(([a], t, stacked))
    L = _interp(a, b, nodes, np.asarray(fp(nodes), dtype=float))
    near = np.min(np.abs(np.subtract.outer(x, t)), axis=1) < 1e-6 * (b - a)
    ratio = np.abs(fpx - L(x))[~near] / np.abs(pnx[~near])
    lam = 1.05 * float(np.max(ratio)) if ratio.size else 0.0
    deriv = L + sign * lam * pn.polynomial(a, b)
    p = deriv.integ(lbnd=a) + float(f(a))
    piece = LocalPiece(p, a, b, "partial", sign, lam)
    return _measure(piece, f, r, k, h, a, b, measure)


def constant_piece(f, a: float, b: float, r: int, h: float, measure: bool = True) -> LocalPiece:
    """The constant f(a) (components with nu = r + 1 extrema)."""
    piece = LocalPiece(Chebyshev([float(f(a))], domain=[a, b]), a, b, "const")
    return _measure(piece, f, r, 2, h, a, b, measure)


def linear_piece(f, a: float, b: float) -> LocalPiece:
    fa, fb = float(f(a)), float(f(b))
    P = Chebyshev([0.5 * (fa + fb), 0.5 * (fb - fa)], domain=[a, b])
    return LocalPiece(P, a, b, "linear", 1 if fb >= fa else -1)


# -- probes ----------------------------------------------------------------------

@dataclass
class ProbeReport:
    lhs: float
    rhs_without_c: float
    ratio: float
    detail: dict = field(default_factory=dict)


def _ratio(lhs, rhs):
    if rhs == 0.0:
        return 0.0 if lhs <= 1e-12 else np.inf
    return lhs / rhs


def probe_lemma_4_5(f, a: float, b: float, knots, r: int, h: float | None = None,
                    resolution: Resolution | None = None) -> ProbeReport:
    """||f - f(a)||_[a,b] against h^r omega_2(f^(r), h; [a, b]).

    r >= 1 needs r + 1 knots with f' pi_{r+1} of one sign; r = 0 takes a
    single knot where f changes monotonicity.
    """
    t = np.asarray(knots, dtype=float)
    if t.size != r + 1:
        raise HypothesisViolation("need r + 1 knots")
    h = _check_geometry(a, b, t, h, 3, 3 * (r + 1))
    x = _grid(a, b, 2001, _focus(f, a, b))
    fp = _deriv(f, 1)
    if fp is not None:
        comonotone_sign(np.asarray(fp(x)), PiNu(t)(x))
    lhs = float(np.max(np.abs(np.asarray(f(x)) - float(f(a)))))
    g = f if r == 0 else _deriv(f, r)
    res = resolution or _local_res(f, a, b)
    rhs = h ** r * modulus_interval(g, 2, h, a, b, res).value
    return ProbeReport(lhs, rhs, _ratio(lhs, rhs), {"h": h})


def cluster_order(Y: ExtremaCycle):
    """Extrema relabelled so that y_1..y_2s is the shortest arc containing them."""
    y = Y.array
    ext = np.concatenate((y, [y[0] + TWO_PI]))
    gaps = np.diff(ext)
    i = int(np.argmax(gaps))
    start = (i + 1) % y.size
    out = np.concatenate((y[start:], y[:start] + TWO_PI))
    return out


def probe_lemma_4_1_4_4(f, Y: ExtremaCycle, h: float, k: int, count: int = 4096) -> ProbeReport:
    """Ratios for the clustered-extrema bounds.

    top_k1  ||f - f(y_2s)|| / (h^{2s-1} omega_{k+1}(f^{(2s-1)}, h))
    top_k   ||f - f(y_2s)|| / (h^{2s}   omega_k(f^{(2s)}, h))
    bottom  ||f - f(y_1)||  / (h^{2s-2} omega_2(f^{(2s-2)}, h))
    The report's ratio is the largest of the three.
    """
    s = Y.s
    y = cluster_order(Y)
    if y[-1] - y[0] > (6 * s - 2) * h + 1e-12:
        raise HypothesisViolation("extrema span %g exceeds (6s-2)h = %g"
                                  % (y[-1] - y[0], (6 * s - 2) * h))
    x = f.sample_grid(count) if hasattr(f, "sample_grid") else -np.pi + TWO_PI * np.arange(count) / count
    x = np.concatenate((x, Y.array))
    fx = np.asarray(f(x), dtype=float)
    top = float(np.max(np.abs(fx - float(f(y[-1])))))
    bot = float(np.max(np.abs(fx - float(f(y[0])))))
    extra = tuple(np.concatenate([np.linspace(v - 2 * h, v + 2 * h, 41) for v in Y.array]))
    res = Resolution(h_count=32, x_count=1024, x_extra=extra)

    def om(order, kk):
        g = f if order == 0 else f.deriv(order)
        return modulus_circle(_with_focus(g, f), kk, h, res).value

    den_top1 = h ** (2 * s - 1) * om(2 * s - 1, k + 1)
    den_top = h ** (2 * s) * om(2 * s, k)
    den_bot = h ** (2 * s - 2) * om(2 * s - 2, 2)
    ratios = {"top_k1": _ratio(top, den_top1), "top_k": _ratio(top, den_top),
              "bottom": _ratio(bot, den_bot)}
    return ProbeReport(max(top, bot), den_top1, max(ratios.values()), ratios)


class _with_focus:
    """Evaluator wrapper that forwards the focus windows of a model."""

    def __init__(self, g, model):
        self.g = g
        self.focus = getattr(model, "focus", [])
        self.breakpoints = getattr(model, "breakpoints", [])

    def __call__(self, x):
        return self.g(x)


def focused_derivative(model, order: int):
    """f^(order) as an evaluator that keeps the model's refinement windows."""
    return _with_focus(model if order == 0 else model.deriv(order), model)


# -- stitching -------------------------------------------------------------------

def _component_piece(f, comp: Component, r: int, k: int, h: float, measure: bool) -> LocalPiece:
    nu = comp.nu
    if nu == r + 1:
        if k > 2:
            raise RegimeUnsupported("component with r+1 = %d extrema needs k <= 2" % nu)
        return constant_piece(f, comp.a, comp.b, r, h, measure)
    if nu == r:
        if k > 3:
            raise RegimeUnsupported("component with r = %d extrema needs k <= 3" % nu)
        return comonotone_piece_full(f, comp.a, comp.b, comp.knots, r, h, measure)
    if nu < r:
        return comonotone_piece_partial(f, comp.a, comp.b, comp.knots, r, k, h, measure)
    raise RegimeUnsupported("component holds %d extrema, more than r + 1 = %d" % (nu, r + 1))


def stitch_S(f, Y: ExtremaCycle, n: int, r: int, k: int, measure: bool = False,
             partition: Partition | None = None, strict: bool = True) -> PiecewisePolynomial:
    """The continuous piecewise polynomial S with S' Pi >= 0 near f.

    S = f(origin) + int S~' over the frame, where S~ is the local piece on
    each component and the monotone interpolant on every other cell.
    ``S.meta`` records the partition, the pieces and their kinds.
    """
    if r < 0 or k < 1:
        raise ValueError("need r >= 0 and k >= 1")
    if r < 2 * Y.s - 2:
        raise RegimeUnsupported("r = %d < 2s - 2 = %d" % (r, 2 * Y.s - 2))
    part = partition or build_partition(n, Y, strict)
    if part.single_component:
        c = float(f(0.0))
        S = PiecewisePolynomial(np.array([-np.pi, np.pi]), [Chebyshev([c], domain=[-np.pi, np.pi])],
                                1, None)
        S.meta = {"kind": "constant", "partition": part, "pieces": []}
        return S
    h = part.h
    pieces = []
    for comp in part.components:
        pieces.append(_component_piece(f, comp, r, k, h, measure))
    for a, b in part.outside_cells:
        if r == 0:
            pieces.append(linear_piece(f, a, b))
        else:
            sigma = int(Y.anchor * np.sign(pi_product(Y, 0.5 * (a + b))))
            pieces.append(monotone_piece(f, a, b, r, k, sigma, measure))
    pieces.sort(key=lambda p: p.a)
    carry = float(f(part.origin))
    stitched = []
    for p in pieces:
        q = p.poly + (carry - float(p.poly(p.a)))
        stitched.append(q)
        carry = float(q(p.b))
    bps = np.array([p.a for p in pieces] + [pieces[-1].b])
    degree = max(len(q.coef) for q in stitched)
    origin = part.origin if part.rotation_cells else None
    S = PiecewisePolynomial(bps, stitched, degree, origin)
    S.meta = {"kind": "stitched", "partition": part, "pieces": pieces}
    return S


@dataclass
class StitchReport:
    n: int
    error: float
    omega: float
    ratio: float
    sign_defect: float
    continuity_defect: float
    kind: str


def stitch_report(f, Y: ExtremaCycle, n: int, r: int, k: int, S: PiecewisePolynomial | None = None,
                  count: int = 8192) -> StitchReport:
    """n^r ||f - S|| / omega_k(f^(r), 1/n) together with the shape checks."""
    if S is None:
        S = stitch_S(f, Y, n, r, k)
    x = f.sample_grid(count) if hasattr(f, "sample_grid") else -np.pi + TWO_PI * np.arange(count) / count
    err = float(np.max(np.abs(np.asarray(f(x)) - S(x))))
    sd = shape_defect(S, Y, count)
    res = Resolution(x_extra=tuple(_focus(f, -np.pi, np.pi)))
    om = modulus_circle(focused_derivative(f, r), k, 1.0 / n, res).value
    ratio = _ratio(n ** r * err, om)
    return StitchReport(n, err, om, ratio, sd, S.continuity_defect(), S.meta.get("kind", ""))


def shape_defect(S: PiecewisePolynomial, Y: ExtremaCycle, count: int = 8192) -> float:
    """max(0, -min S' Pi anchor) relative to max |S'| max |Pi| on a grid off the breakpoints."""
    lo = S.breakpoints[0]
    x = lo + (S.breakpoints[-1] - lo) * (np.arange(count) + 0.5) / count
    d = S.derivative()(x)
    pv = Y.anchor * pi_product(Y, x)
    scale = max(float(np.max(np.abs(d))) * float(np.max(np.abs(pv))), 1e-300)
    return float(max(0.0, -np.min(d * pv)) / scale)


def probe_lemma_5_1(f, Y: ExtremaCycle, n: int, r: int, k: int, factor: float = 10.0,
                    S: PiecewisePolynomial | None = None) -> ProbeReport:
    """E_n^(1)(f) (LP lower bound) against factor * (omega_m(f, 1/n) + ||f - S||), m = r + k."""
    if S is None:
        S = stitch_S(f, Y, n, r, k)
    x = f.sample_grid(8192) if hasattr(f, "sample_grid") else -np.pi + TWO_PI * np.arange(8192) / 8192
    err = float(np.max(np.abs(np.asarray(f(x)) - S(x))))
    om = modulus_circle(focused_derivative(f, 0), r + k, 1.0 / n,
                        Resolution(x_extra=tuple(_focus(f, -np.pi, np.pi)))).value
    lhs = best_comonotone(f, Y, n).value
    rhs = om + err
    return ProbeReport(lhs, rhs, _ratio(lhs, rhs),
                       {"factor": factor, "holds": lhs <= factor * rhs})
