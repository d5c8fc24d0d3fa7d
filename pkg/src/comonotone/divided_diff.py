"""Divided differences and numerical checks of the alternating-pattern identities.

Under an alternating monotonicity pattern of the data
((-1)^{m-i} (g(t_i) - g(t_{i-1})) >= 0 for all i, or the reverse), the top
divided difference has a fixed sign, satisfies an absolute-value recurrence,
and bounds the oscillation of the data from above.  Each ``check_*``
function evaluates one of these statements on concrete data and reports the
numbers involved.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import factorial
from typing import Sequence

import numpy as np

from . import _core
from .errors import BadR, DegenerateKnots, LengthMismatch, PatternViolation, UnsupportedOrder
from .smoothness import COARSE, Resolution, modulus_interval

GAP_TOL = 1e-12
PATTERN_TOL = 1e-12


@dataclass(frozen=True)
class KnotSet:
    knots: tuple

    def __post_init__(self):
        t = tuple(float(v) for v in self.knots)
        if len(t) == 0:
            raise ValueError("need at least one knot")
        if any(q <= p for p, q in zip(t, t[1:])):
            raise ValueError("knots must be strictly increasing")
        object.__setattr__(self, "knots", t)

    @property
    def m(self) -> int:
        return len(self.knots) - 1

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.knots)

    @property
    def min_gap(self) -> float:
        t = self.array
        return float(np.min(np.diff(t))) if t.size > 1 else np.inf


class MonotonePattern(enum.Enum):
    pattern_a = "a"  # (-1)^{m-i} (g_i - g_{i-1}) >= 0
    pattern_b = "b"  # reverse inequality

    @property
    def sign(self) -> int:
        return 1 if self is MonotonePattern.pattern_a else -1


def _as_arrays(knots, values):
    t = knots.array if isinstance(knots, KnotSet) else np.asarray(knots, dtype=float).ravel()
    v = np.asarray(values, dtype=float).ravel()
    if t.size != v.size:
        raise LengthMismatch("%d knots but %d values" % (t.size, v.size))
    if t.size > 1:
        ts = np.sort(t)
        span = ts[-1] - ts[0]
        if np.min(np.diff(ts)) <= GAP_TOL * span:
            raise DegenerateKnots("knots closer than %g of their span" % GAP_TOL)
    return t, v


def divided_difference(knots, values) -> float:
    """[t_0, ..., t_m; g] by the two-term recurrence; [t_0; g] = g(t_0).

    Knots must be distinct but need not be sorted.
    """
    t, v = _as_arrays(knots, values)
    if t.size == 1:
        return float(v[0])
    return float(_core.newton_dd(t, v))


def divided_difference_explicit(knots, values) -> float:
    """The explicit sum  sum_i g(t_i) / prod_{j != i} (t_i - t_j)  (test oracle)."""
    t, v = _as_arrays(knots, values)
    total = 0.0
    for i in range(t.size):
        total += v[i] / np.prod(np.delete(t[i] - t, i))
    return float(total)


def dd_scale(knots, values) -> float:
    """sum_i |g(t_i)| / prod_{j != i} |t_i - t_j|: magnitude for rounding tolerances."""
    t, v = _as_arrays(knots, values)
    if t.size == 1:
        return abs(float(v[0]))
    return float(sum(abs(v[i]) / np.prod(np.abs(np.delete(t[i] - t, i))) for i in range(t.size)))


def pattern_defect(values, pattern: MonotonePattern) -> float:
    """Largest violation of the declared pattern (0 when it holds)."""
    v = np.asarray(values, dtype=float)
    m = v.size - 1
    if m < 1:
        return 0.0
    i = np.arange(1, m + 1)
    signed = pattern.sign * (-1.0) ** (m - i) * np.diff(v)
    return float(max(0.0, -np.min(signed)))


def validate_pattern(values, pattern: MonotonePattern) -> None:
    v = np.asarray(values, dtype=float)
    scale = max(1.0, float(np.max(np.abs(v)))) if v.size else 1.0
    if pattern_defect(v, pattern) > PATTERN_TOL * scale:
        raise PatternViolation("data do not follow %s" % pattern.name)


@dataclass
class SignReport:
    holds: bool
    value: float


@dataclass
class RecurrenceReport:
    lhs: float
    rhs: float
    rel_err: float


@dataclass
class BoundReport:
    holds: bool
    slack: float


def check_sign(knots, values, pattern: MonotonePattern) -> SignReport:
    """The top divided difference has the sign of the pattern."""
    validate_pattern(values, pattern)
    value = divided_difference(knots, values)
    tol = 1e-12 * dd_scale(knots, values)
    return SignReport(pattern.sign * value >= -tol, value)


def check_recurrence(knots, values, pattern: MonotonePattern) -> RecurrenceReport:
    """|[t_0..t_m]| = (|[t_1..t_m]| + |[t_0..t_{m-1}]|) / (t_m - t_0)."""
    t, v = _as_arrays(knots, values)
    if t.size < 3:
        raise ValueError("the recurrence check needs m >= 2")
    validate_pattern(v, pattern)
    lhs = abs(divided_difference(t, v))
    rhs = (abs(divided_difference(t[1:], v[1:])) + abs(divided_difference(t[:-1], v[:-1]))) / (
        t[-1] - t[0])
    return RecurrenceReport(lhs, rhs, abs(lhs - rhs) / (1.0 + lhs))


def check_lower_bound(knots, values, pattern: MonotonePattern) -> BoundReport:
    """(t_m - t_0)^m |[t_0..t_m]| >= max g(t_i) - min g(t_i)."""
    t, v = _as_arrays(knots, values)
    validate_pattern(v, pattern)
    m = t.size - 1
    lhs = (t[-1] - t[0]) ** m * abs(divided_difference(t, v)) if m else 0.0
    rhs = float(np.max(v) - np.min(v))
    scale = max(1.0, float(np.max(np.abs(v))))
    slack = lhs - rhs
    return BoundReport(slack >= -1e-10 * scale, slack)


def check_product_bound(knots, values, pattern: MonotonePattern, r: int) -> BoundReport:
    """|[t_0..t_m]| prod_{i=r}^m (t_i - t_0) >= |[t_1..t_r]| for 2 <= r <= m."""
    t, v = _as_arrays(knots, values)
    m = t.size - 1
    if not 2 <= r <= m:
        raise BadR("need 2 <= r <= m, got r=%d, m=%d" % (r, m))
    validate_pattern(v, pattern)
    lhs = abs(divided_difference(t, v)) * float(np.prod(t[r:] - t[0]))
    rhs = abs(divided_difference(t[1:r + 1], v[1:r + 1]))
    scale = max(1.0, dd_scale(t[1:r + 1], v[1:r + 1]))
    slack = lhs - rhs
    return BoundReport(slack >= -1e-10 * scale, slack)


def random_pattern_instance(rng: np.random.Generator, m: int,
                            pattern: MonotonePattern = MonotonePattern.pattern_a,
                            zero_prob: float = 0.1):
    """Random increasing knots in [0, 1] and data following ``pattern``."""
    t = np.sort(rng.uniform(0.0, 1.0, m + 1))
    while m and np.min(np.diff(t)) < 1e-3:
        t = np.sort(rng.uniform(0.0, 1.0, m + 1))
    steps = rng.exponential(1.0, m)
    steps[rng.uniform(size=m) < zero_prob] = 0.0
    i = np.arange(1, m + 1)
    signed = pattern.sign * (-1.0) ** (m - i) * steps
    v = rng.normal() + np.concatenate(([0.0], np.cumsum(signed)))
    return t, v


@dataclass
class DLReport:
    lhs: float
    rhs_without_c: float
    ratio: float


def dl_bound(f, l: int, knots: Sequence[float], a: float, b: float, f_l=None,
             resolution: Resolution = COARSE) -> DLReport:
    """Both sides of |[x_0..x_m; f]| <= (c/l!) omega_{m-l}(f^(l), b-a; [a,b]) S.

    S = sum_{j=l}^m 1 / prod_{i >= l, i != j} |x_j - x_i|; knots are taken in
    the given order (the sum depends on it).  ``ratio`` is the empirical c.
    """
    x = np.asarray(knots, dtype=float)
    m = x.size - 1
    if not 0 <= l < m:
        raise ValueError("need 0 <= l < m")
    if f_l is None:
        if l == 0:
            f_l = f
        elif hasattr(f, "deriv"):
            if l > getattr(f, "max_analytic_order", 0) + 6:
                raise UnsupportedOrder("derivative order %d unavailable" % l)
            f_l = f.deriv(l)
        else:
            raise UnsupportedOrder("derivative of order %d needed but not supplied" % l)
    lhs = abs(divided_difference(x, np.asarray(f(x), dtype=float)))
    tail = x[l:]
    S = 0.0
    for j in range(tail.size):
        S += 1.0 / float(np.prod(np.abs(np.delete(tail[j] - tail, j))))
    om = modulus_interval(f_l, m - l, b - a, a, b, resolution).value
    rhs = om * S / factorial(l)
    if rhs == 0.0:
        ratio = 0.0 if lhs <= 1e-12 * max(1.0, dd_scale(x, f(x))) else np.inf
    else:
        ratio = lhs / rhs
    return DLReport(lhs, rhs, ratio)
