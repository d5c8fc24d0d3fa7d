"""The three adversarial families and numerical checks of their proof chains.

Each family pairs a cutoff function G(x/b) * tau(x) (or its antiderivative)
with a cycle whose extrema crowd into [-b, b].  Any comonotone polynomial
must have a high derivative vanish inside that window, which tau forbids;
as b shrinks with n this forces E_n^(1)(F) n^r / omega_k(F^(r), 1/n) to grow
like n, sqrt(n) or n^(1/3).

Identifiers follow the theorems: ``T2_7`` (0 <= r < 2s-2, omega_2),
``T2_2`` (r = 2s-2, omega_3) and ``T2_4`` (r = 2s-1, omega_4).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Mapping, Sequence

import numpy as np

from .errors import (BadRegime, DeltaNotFound, InsufficientData, NTooSmall)
from .minimax import best_comonotone
from .periodic_fn import (PanelIntegrator, PeriodicFunctionModel, cutoff_antiderivative_model,
                          cutoff_product_model, trig_model)
from .smoothness import Resolution, modulus_circle
from .trig_poly import ExtremaCycle, TrigPolynomial, cos_poly, pi_product, sin_power

THEOREMS = ("T2_2", "T2_4", "T2_7")
MODULUS_ORDER = {"T2_7": 2, "T2_2": 3, "T2_4": 4}
GROWTH_EXPONENT = {"T2_7": 1.0, "T2_2": 0.5, "T2_4": 1.0 / 3.0}
B_EXPONENT = {"T2_7": 2.0, "T2_2": 1.5, "T2_4": 4.0 / 3.0}


@dataclass
class CounterexampleInstance:
    theorem_id: str
    n: int
    s: int
    r: int
    b: float
    F: PeriodicFunctionModel
    tau: TrigPolynomial
    Y: ExtremaCycle
    c_star: float
    delta: float | None = None
    constant: float | None = None  # c4 or c9 where the family uses one
    asymptotic: bool = True  # n > c_star
    f: PeriodicFunctionModel | None = None  # the cutoff integrand (T2_2 / T2_4)

    @property
    def k(self) -> int:
        return MODULUS_ORDER[self.theorem_id]

    def to_record(self) -> dict:
        return {"theorem_id": self.theorem_id, "n": self.n, "s": self.s, "r": self.r,
                "k": self.k, "b": self.b, "delta": self.delta, "c_star": self.c_star,
                "constant": self.constant, "asymptotic": self.asymptotic,
                "Y": self.Y.to_record(), "tau": self.tau.to_record()}

    @classmethod
    def from_record(cls, rec: dict) -> "CounterexampleInstance":
        return build(rec["theorem_id"], rec["n"], rec["s"], r=rec.get("r"), override=True)


# -- constants -------------------------------------------------------------------

def largest_radius(pred, hi: float = 1.0, count: int = 2001, iters: int = 60) -> float:
    """Largest c in (0, hi] with pred(x) true for all |x| <= c (grid checked).

    Bisection on the monotone predicate c -> all(pred(linspace(-c, c))).
    """
    def ok(c):
        x = np.linspace(-c, c, count)
        return bool(np.all(pred(x)))

    if ok(hi):
        return hi
    lo = 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def tau_T2_7(r: int) -> TrigPolynomial:
    if r % 2:
        return sin_power(r + 1, half_angle=True) * float(2 ** (r + 1))
    return -sin_power(r + 1)


def constant_c4(r: int) -> float:
    """Largest c < 1 with |tau^(r+1)(x)| >= 1/2 for |x| <= c."""
    d = tau_T2_7(r).derivative(r + 1)
    return largest_radius(lambda x: np.abs(d(x)) >= 0.5, hi=1.0 - 1e-12)


def constant_c9(r: int) -> float:
    """Largest c < 1 with |tau^(r)(x)| >= |x|/2 for |x| <= c, tau = sin^{r+1}."""
    d = sin_power(r + 1).derivative(r)
    return largest_radius(lambda x: np.abs(d(x)) >= 0.5 * np.abs(x) - 1e-15, hi=1.0 - 1e-12)


def find_delta(tau: TrigPolynomial, r: int, b: float) -> float:
    """Largest delta < b with -tau^(r) > b^2/4 on [-delta, delta]."""
    d = tau.derivative(r)
    if not -d(0.0) > 0.25 * b * b:
        raise DeltaNotFound("-tau^(r)(0) does not exceed b^2/4")
    delta = largest_radius(lambda x: -d(x) > 0.25 * b * b, hi=b)
    if delta >= b:
        delta = b * (1.0 - 1e-9)
    return delta


def c_star(theorem_id: str, r: int) -> float:
    if theorem_id == "T2_7":
        return max((2.0 / constant_c4(r)) ** 0.5, r + 1.0, 8.0)
    if theorem_id == "T2_2":
        return max((2.0 / constant_c9(r)) ** (2.0 / 3.0), r + 1.0, 2.0 ** 8)
    return max(r + 1.0, 2.0 ** 12)


def _gate(theorem_id, n, r, override):
    cs = c_star(theorem_id, r)
    if n <= cs and not override:
        raise NTooSmall("n = %d does not exceed c_* = %g (pass override=True)" % (n, cs))
    return cs, n > cs


# -- builders --------------------------------------------------------------------

def build_T2_7(n: int, r: int, s: int, override: bool = False) -> CounterexampleInstance:
    if not (s >= 2 and 0 <= r < 2 * s - 2):
        raise BadRegime("T2_7 needs 0 <= r < 2s - 2")
    cs, asym = _gate("T2_7", n, r, override)
    b = float(n) ** -2.0
    tau = tau_T2_7(r)
    F = cutoff_product_model(tau, b, "T2_7(n=%d,r=%d,s=%d)" % (n, r, s))
    if r % 2 == 0:
        inner = np.linspace(-b, b, 2 * s - 2)
        pts = (-0.5 * np.pi, *inner, 0.5 * np.pi)
    else:
        pts = (-np.pi, *np.linspace(-b, b, 2 * s - 1))
    Y = ExtremaCycle(tuple(float(p) for p in pts), anchor=1)
    return CounterexampleInstance("T2_7", n, s, r, b, F, tau, Y, cs, None, constant_c4(r), asym)


def build_T2_4(n: int, s: int, override: bool = False) -> CounterexampleInstance:
    if s < 1:
        raise BadRegime("s must be >= 1")
    r = 2 * s - 1
    cs, asym = _gate("T2_4", n, r, override)
    b = float(n) ** (-4.0 / 3.0)
    tau = (TrigPolynomial.constant(np.cos(b), 2) - cos_poly()) * sin_power(r)
    delta = find_delta(tau, r, b)
    F = cutoff_antiderivative_model(tau, b, "T2_4(n=%d,s=%d)" % (n, s))
    pts = np.linspace(-delta, delta, 2 * s + 1)[1:-1]
    Y = ExtremaCycle((-np.pi, *(float(p) for p in pts)), anchor=1)
    inst = CounterexampleInstance("T2_4", n, s, r, b, F, tau, Y, cs, delta, None, asym)
    inst.f = cutoff_product_model(tau, b)
    return inst


def build_T2_2(n: int, s: int, override: bool = False) -> CounterexampleInstance:
    if s < 1:
        raise BadRegime("s must be >= 1")
    r = 2 * s - 2
    cs, asym = _gate("T2_2", n, r, override)
    b = float(n) ** -1.5
    tau = sin_power(r + 1)
    F = cutoff_antiderivative_model(tau, b, "T2_2(n=%d,s=%d)" % (n, s))
    pts = np.linspace(0.5 * b, b, 2 * s - 1)
    Y = ExtremaCycle((-np.pi, *(float(p) for p in pts)), anchor=1)
    inst = CounterexampleInstance("T2_2", n, s, r, b, F, tau, Y, cs, None, constant_c9(r), asym)
    inst.f = cutoff_product_model(tau, b)
    return inst


def build(theorem_id: str, n: int, s: int, r: int | None = None,
          override: bool = False) -> CounterexampleInstance:
    if theorem_id == "T2_7":
        return build_T2_7(n, 0 if r is None else r, s, override)
    if theorem_id == "T2_4":
        return build_T2_4(n, s, override)
    if theorem_id == "T2_2":
        return build_T2_2(n, s, override)
    raise BadRegime("unknown theorem id %r" % theorem_id)


# -- certificates ----------------------------------------------------------------

def window(inst: CounterexampleInstance, count: int = 4001) -> np.ndarray:
    b = inst.b
    x = np.linspace(-2.5 * b, 2.5 * b, count)
    return np.unique(np.concatenate((x, [-2 * b, -b, b, 2 * b])))


def modulus_resolution(inst: CounterexampleInstance) -> Resolution:
    b = inst.b
    return Resolution(x_extra=tuple(np.linspace(-3 * b, 3 * b, 801)))


def comonotone_defect(F, Y: ExtremaCycle, b: float, count: int = 8192) -> float:
    """max(0, -min F' Pi anchor) relative to max |F'| max |Pi|."""
    x = np.concatenate((-np.pi + 2 * np.pi * np.arange(count) / count,
                        np.linspace(-3 * b, 3 * b, 2001), Y.array))
    d = np.asarray(F.deriv(1)(x), dtype=float)
    pv = Y.anchor * pi_product(Y, x)
    scale = max(float(np.max(np.abs(d))) * float(np.max(np.abs(pv))), 1e-300)
    return float(max(0.0, -np.min(d * pv)) / scale)


@dataclass
class Check:
    name: str
    measured: float
    bound: float
    holds: bool


@dataclass
class Certificate:
    theorem_id: str
    n: int
    checks: list = field(default_factory=list)
    constants: dict = field(default_factory=dict)

    @property
    def passes(self) -> bool:
        return all(c.holds for c in self.checks)

    def add(self, name, measured, bound, slack=2.0):
        self.checks.append(Check(name, float(measured), float(bound), measured <= slack * bound))


def _sup(g, x):
    return float(np.max(np.abs(np.asarray(g(x), dtype=float))))


def certify_instance(inst: CounterexampleInstance, slack: float = 2.0) -> Certificate:
    """Numerical versions of the norm and modulus inequalities in the proof chain.

    Bounds with explicit constants are checked with ``slack``; bounds of the
    form c * b^q only have c recorded (as ``constants``).
    """
    cert = Certificate(inst.theorem_id, inst.n)
    b, r, tau, F = inst.b, inst.r, inst.tau, inst.F
    x = window(inst)
    t = 1.0 / inst.n
    cert.add("comonotone", comonotone_defect(F, inst.Y, b), 1e-9, 1.0)
    tau_m = trig_model(tau)
    k = inst.k
    om = modulus_circle(_deriv(F, r), k, t, modulus_resolution(inst)).value
    cert.constants["omega"] = om
    if inst.theorem_id == "T2_7":
        cert.add("F-tau", _sup(lambda z: F(z) - tau(z), x), (2 * b) ** (r + 1), slack)
        dr = _sup(lambda z: F.deriv(r)(z) - tau_m.deriv(r)(z), x)
        c6 = 4.0 * dr / b
        c5 = tau.derivative(r + 2).sup_norm()
        cert.constants.update(c_r=dr / b, c5=c5, c6=c6)
        cert.add("omega2<=c5t^2+c6b", om, c5 * t * t + c6 * b, 1.0 + 1e-6)
        return cert
    big = F.big_tau
    extra = 1 if inst.theorem_id == "T2_4" else 0
    cert.add("F-Tau", _sup(lambda z: F(z) - big(z), x), (2 * b) ** (r + 2 + extra), slack)
    f = inst.f
    cert.add("f-tau", _sup(lambda z: f(z) - tau(z), x),
             (2 * b) ** (r + 1 + extra), slack)
    if r >= 1:
        diff = _sup(lambda z: f.deriv(r - 1)(z) - tau_m.deriv(r - 1)(z), x)
    else:
        diff = _sup(lambda z: F(z) - big(z), x)
    q = 2 + extra
    c_small = 2.0 ** k * diff / b ** q
    c_smooth = big.derivative(r + k).sup_norm()
    cert.constants.update(c_diff=diff / b ** q, c_smooth=c_smooth, c_small=c_small)
    cert.add("omega_k<=ct^k+cb^q", om, c_smooth * t ** k + c_small * b ** q, 1.0 + 1e-6)
    closure = abs(PanelIntegrator(f, -np.pi, np.pi, panels=256, nodes=20,
                                  breakpoints=(-2 * b, -b, 0.0, b, 2 * b)).total)
    cert.add("periodic closure", closure, 1e-8, 1.0)
    if inst.theorem_id == "T2_4":
        d = tau.derivative(r)
        xs = np.linspace(-inst.delta, inst.delta, 2001)
        cert.add("-tau^(r)>b^2/4 on [-delta,delta]", 0.25 * b * b - float(np.min(-d(xs))), 0.0, 1.0)
    return cert


def _deriv(F, r):
    g = F if r == 0 else F.deriv(r)
    return g


def lp_floor(inst: CounterexampleInstance) -> float:
    """The lower bound 1/(4 n^{r+1}) implied for T2_7 (0 for the other families)."""
    if inst.theorem_id != "T2_7":
        return 0.0
    return 0.25 / float(inst.n) ** (inst.r + 1)


# -- growth ------------------------------------------------------------------------

@dataclass
class GrowthReport:
    theorem_id: str
    ns: list
    ratios: list
    omegas: list
    exponent_fit: float
    exponent_theory: float
    passes: bool

    def to_record(self) -> dict:
        return {"theorem_id": self.theorem_id, "ns": self.ns, "ratios": self.ratios,
                "omegas": self.omegas, "exponent_fit": self.exponent_fit,
                "exponent_theory": self.exponent_theory, "passes": self.passes}


def growth_fit(ns: Sequence[int], ratios: Sequence[float]) -> float:
    """Least-squares slope of log R against log n."""
    ns = np.asarray(ns, dtype=float)
    R = np.asarray(ratios, dtype=float)
    if ns.size < 3:
        raise InsufficientData("need at least 3 values of n")
    if np.any(R <= 0) or not np.all(np.isfinite(R)):
        raise InsufficientData("ratios must be positive and finite")
    return float(np.polyfit(np.log(ns), np.log(R), 1)[0])


def certify_growth(instances: Sequence[CounterexampleInstance],
                   lp_values: Mapping[int, float]) -> GrowthReport:
    """Fit R_n = E(n) n^r / omega_k(F_n^(r), 1/n); pass iff slope >= half the theory."""
    if len(instances) < 3:
        raise InsufficientData("need at least 3 values of n")
    tid = instances[0].theorem_id
    ns, ratios, omegas = [], [], []
    for inst in sorted(instances, key=lambda i: i.n):
        om = modulus_circle(_deriv(inst.F, inst.r), inst.k, 1.0 / inst.n,
                            modulus_resolution(inst)).value
        ns.append(inst.n)
        omegas.append(om)
        ratios.append(lp_values[inst.n] * inst.n ** inst.r / om)
    slope = growth_fit(ns, ratios)
    theory = GROWTH_EXPONENT[tid]
    return GrowthReport(tid, ns, ratios, omegas, slope, theory, slope >= 0.5 * theory)


def lp_estimate(inst: CounterexampleInstance) -> float:
    """Grid LP lower bound of E_n^(1)(F, Y)."""
    extra = np.linspace(-2.5 * inst.b, 2.5 * inst.b, 401)
    return best_comonotone(inst.F, inst.Y, inst.n, extra=extra).value


def run_family(theorem_id: str, s: int, ns: Sequence[int], r: int | None = None,
               override: bool = True):
    """Build one instance per n, estimate E by LP and certify growth."""
    insts = [build(theorem_id, n, s, r, override) for n in ns]
    values = {inst.n: lp_estimate(inst) for inst in insts}
    return insts, values, certify_growth(insts, values)
