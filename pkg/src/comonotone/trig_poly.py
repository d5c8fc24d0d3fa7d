"""Trigonometric polynomials, extrema cycles and the sign product.

A :class:`TrigPolynomial` of degree bound ``n`` is

    T(x) = c0 + sum_{j=1}^{n-1} (a_j cos jx + b_j sin jx),

so ``n = 1`` holds the constants only.  An :class:`ExtremaCycle` stores the
2s points where a comonotone function switches monotonicity, together with
an explicit parity anchor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ZeroPolynomial

TWO_PI = 2.0 * np.pi


def sup_grid_size(n: int) -> int:
    return max(1024, 32 * n)


def periodic_grid(count: int) -> np.ndarray:
    """Uniform grid of ``count`` points on [-pi, pi)."""
    return -np.pi + TWO_PI * np.arange(count) / count


@dataclass(frozen=True)
class TrigPolynomial:
    degree_bound: int
    c0: float = 0.0
    a: np.ndarray = field(default_factory=lambda: np.zeros(0))
    b: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        n = int(self.degree_bound)
        if n < 1:
            raise ValueError("degree_bound must be >= 1")
        a = np.zeros(n - 1)
        b = np.zeros(n - 1)
        a_in = np.asarray(self.a, dtype=float).ravel()
        b_in = np.asarray(self.b, dtype=float).ravel()
        if a_in.size > n - 1 or b_in.size > n - 1:
            raise ValueError("too many coefficients for degree bound %d" % n)
        a[: a_in.size] = a_in
        b[: b_in.size] = b_in
        object.__setattr__(self, "degree_bound", n)
        object.__setattr__(self, "c0", float(self.c0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    # -- construction -------------------------------------------------------
    @classmethod
    def zero(cls, n: int = 1) -> "TrigPolynomial":
        return cls(n)

    @classmethod
    def constant(cls, value: float, n: int = 1) -> "TrigPolynomial":
        return cls(n, value)

    @classmethod
    def from_coefficient_vector(cls, n: int, vec: Sequence[float]) -> "TrigPolynomial":
        """Inverse of :meth:`coefficient_vector` (layout ``[c0, a..., b...]``)."""
        vec = np.asarray(vec, dtype=float)
        return cls(n, vec[0], vec[1:n], vec[n:2 * n - 1])

    @classmethod
    def from_complex(cls, coeffs: np.ndarray) -> "TrigPolynomial":
        """Build from complex coefficients ``e_j``, j = -(n-1)..n-1, real series."""
        coeffs = np.asarray(coeffs)
        m = (coeffs.size - 1) // 2
        pos = coeffs[m + 1:]
        return cls(m + 1, coeffs[m].real, 2.0 * pos.real, -2.0 * pos.imag)

    @classmethod
    def interpolate(cls, func, n: int) -> "TrigPolynomial":
        """Recover a trigonometric polynomial of degree < n from samples.

        Exact (to rounding) when ``func`` is itself such a polynomial.
        """
        m = 2 * n + 1
        x = TWO_PI * np.arange(m) / m
        vals = np.asarray(func(x), dtype=float)
        c = np.fft.rfft(vals) / m
        a = 2.0 * c[1:n].real
        b = -2.0 * c[1:n].imag
        return cls(n, c[0].real, a, b)

    # -- views --------------------------------------------------------------
    def coefficient_vector(self) -> np.ndarray:
        return np.concatenate(([self.c0], self.a, self.b))

    def complex_coefficients(self) -> np.ndarray:
        n = self.degree_bound
        out = np.zeros(2 * n - 1, dtype=complex)
        out[n - 1] = self.c0
        pos = 0.5 * (self.a - 1j * self.b)
        out[n:] = pos
        out[: n - 1] = np.conj(pos[::-1])
        return out

    def resized(self, n: int) -> "TrigPolynomial":
        """Same polynomial under a different degree bound (must still fit)."""
        if n < self.degree_bound:
            tail = np.concatenate((self.a[n - 1:], self.b[n - 1:]))
            if np.any(tail != 0.0):
                raise ValueError("polynomial does not fit degree bound %d" % n)
        return TrigPolynomial(n, self.c0, self.a[: n - 1], self.b[: n - 1])

    # -- evaluation ---------------------------------------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.degree_bound == 1:
            return np.full_like(x, self.c0) if x.ndim else float(self.c0)
        j = np.arange(1, self.degree_bound)
        phase = np.multiply.outer(x, j)
        val = self.c0 + np.cos(phase) @ self.a + np.sin(phase) @ self.b
        return val if x.ndim else float(val)

    def derivative(self, order: int = 1) -> "TrigPolynomial":
        """Termwise derivative: (a_j, b_j) -> (j b_j, -j a_j) per order."""
        a, b = self.a.copy(), self.b.copy()
        j = np.arange(1, self.degree_bound, dtype=float)
        for _ in range(order):
            a, b = j * b, -j * a
        return TrigPolynomial(self.degree_bound, 0.0 if order > 0 else self.c0, a, b)

    def antiderivative(self) -> "TrigPolynomial":
        """Zero-mean antiderivative; requires c0 == 0 (else it is not periodic)."""
        if self.c0 != 0.0:
            raise ValueError("antiderivative of a polynomial with nonzero mean is not periodic")
        j = np.arange(1, self.degree_bound, dtype=float)
        return TrigPolynomial(self.degree_bound, 0.0, -self.b / j, self.a / j)

    def __add__(self, other):
        if isinstance(other, TrigPolynomial):
            n = max(self.degree_bound, other.degree_bound)
            p, q = self.resized(n), other.resized(n)
            return TrigPolynomial(n, p.c0 + q.c0, p.a + q.a, p.b + q.b)
        return TrigPolynomial(self.degree_bound, self.c0 + float(other), self.a, self.b)

    __radd__ = __add__

    def __neg__(self):
        return TrigPolynomial(self.degree_bound, -self.c0, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TrigPolynomial):
            return TrigPolynomial.from_complex(
                np.convolve(self.complex_coefficients(), other.complex_coefficients()))
        s = float(other)
        return TrigPolynomial(self.degree_bound, s * self.c0, s * self.a, s * self.b)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = TrigPolynomial.constant(1.0)
        for _ in range(int(k)):
            out = out * self
        return out

    def shifted(self, delta: float) -> "TrigPolynomial":
        """The polynomial x -> T(x + delta)."""
        j = np.arange(1, self.degree_bound)
        c, s = np.cos(j * delta), np.sin(j * delta)
        return TrigPolynomial(self.degree_bound, self.c0,
                              self.a * c + self.b * s, self.b * c - self.a * s)

    def sup_norm(self, grid_count: int | None = None) -> float:
        count = grid_count or sup_grid_size(self.degree_bound)
        return float(np.max(np.abs(self(periodic_grid(count)))))

    def to_record(self) -> dict:
        return {"n": self.degree_bound, "c0": self.c0,
                "a": self.a.tolist(), "b": self.b.tolist()}

    @classmethod
    def from_record(cls, rec: dict) -> "TrigPolynomial":
        return cls(int(rec["n"]), rec["c0"], rec["a"], rec["b"])


def sin_power(r: int, half_angle: bool = False) -> TrigPolynomial:
    """sin^r(x), or sin^r(x/2) for even r when ``half_angle`` is set."""
    if half_angle:
        if r % 2:
            raise ValueError("sin^r(x/2) is a trigonometric polynomial only for even r")
        # sin^2(x/2) = (1 - cos x) / 2
        return TrigPolynomial(2, 0.5, [-0.5]) ** (r // 2)
    return TrigPolynomial(2, 0.0, [0.0], [1.0]) ** r


def cos_poly() -> TrigPolynomial:
    return TrigPolynomial(2, 0.0, [1.0])


@dataclass(frozen=True)
class ExtremaCycle:
    """The points y_1 < ... < y_{2s} of one period.

    ``anchor = +1`` means the standard parity: (-1)^{i-1} f is nondecreasing
    on [y_{i-1}, y_i], i.e. y_1 is a local maximum and f' * Pi >= 0.
    ``anchor = -1`` flips every direction (y_1 is a minimum).
    """

    points: tuple
    anchor: int = 1

    def __post_init__(self):
        pts = tuple(float(p) for p in self.points)
        if len(pts) == 0 or len(pts) % 2:
            raise ValueError("an extrema cycle needs an even, positive number of points")
        if any(q <= p for p, q in zip(pts, pts[1:])):
            raise ValueError("cycle points must be strictly increasing")
        if pts[-1] - pts[0] >= TWO_PI:
            raise ValueError("cycle must fit inside one period")
        if pts[0] < -np.pi - 1e-12 or pts[-1] > np.pi + 1e-12:
            raise ValueError("cycle points must lie in [-pi, pi]")
        if self.anchor not in (1, -1):
            raise ValueError("anchor must be +1 or -1")
        object.__setattr__(self, "points", pts)

    @property
    def s(self) -> int:
        return len(self.points) // 2

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points)

    def extended(self, i: int) -> float:
        """y_i for any integer i (1-based, periodic extension)."""
        q, rem = divmod(i - 1, 2 * self.s)
        return self.points[rem] + TWO_PI * q

    def sign(self, x) -> np.ndarray:
        """Required sign of f' at x (anchor * sign Pi)."""
        return self.anchor * np.sign(pi_product(self, x))

    def to_record(self) -> dict:
        return {"s": self.s, "points": list(self.points), "anchor": self.anchor}


def pi_product(Y: ExtremaCycle, x):
    """Pi(x) = prod_i sin((x - y_i) / 2)."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    for y in Y.points:
        out = out * np.sin(0.5 * (x - y))
    return out if x.ndim else float(out)


def pi_polynomial(Y: ExtremaCycle) -> TrigPolynomial:
    """Pi as a trigonometric polynomial of degree s (degree bound s+1)."""
    return TrigPolynomial.interpolate(lambda x: pi_product(Y, x), Y.s + 1)


@dataclass
class ComonotoneReport:
    ok: bool
    worst_violation: float
    worst_x: float
    grid_count: int


def is_comonotone(T: TrigPolynomial, Y: ExtremaCycle, grid_count: int | None = None,
                  margin: float = 1e-9, refine: int = 0) -> ComonotoneReport:
    """Check anchor * T'(x) Pi(x) >= -margin on a uniform grid.

    With ``refine > 0`` the grid is doubled up to that many times, stopping
    early once the worst value stops moving.
    """
    count = grid_count or sup_grid_size(T.degree_bound)
    dT = T.derivative()
    prev = None
    for _ in range(refine + 1):
        x = np.concatenate((periodic_grid(count), Y.array))
        vals = Y.anchor * dT(x) * pi_product(Y, x)
        i = int(np.argmin(vals))
        worst = float(min(vals[i], 0.0))
        if prev is not None and abs(worst - prev) <= 1e-15:
            break
        prev = worst
        count *= 2
    return ComonotoneReport(worst >= -margin, -worst, float(x[i]), len(x))


def bernstein_ratio(T: TrigPolynomial, order: int, grid_count: int | None = None) -> float:
    """||T^(j)|| / (n^j ||T||) on a grid; at most 1 by Bernstein's inequality."""
    if order > 6:
        raise ValueError("order must be <= 6")
    count = grid_count or sup_grid_size(T.degree_bound)
    norm = T.sup_norm(count)
    if norm == 0.0:
        raise ZeroPolynomial("the zero polynomial has no Bernstein ratio")
    dnorm = T.derivative(order).sup_norm(count) if order else norm
    return dnorm / (T.degree_bound ** order * norm)
