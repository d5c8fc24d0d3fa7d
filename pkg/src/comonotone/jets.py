"""Truncated Taylor arithmetic ("jets") for exact derivative evaluation.

A :class:`Jet` carries the Taylor coefficients c_0..c_K of a function at N
points at once; derivative j equals j! * c_j.  Composite models (cutoff
products, weighted sign products) are written once as jet expressions and
every derivative order up to K comes out of the same evaluation.
"""
from __future__ import annotations

from math import factorial

import numpy as np

from . import _core


class Jet:
    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = np.ascontiguousarray(coeffs, dtype=float)

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @classmethod
    def variable(cls, x, order: int) -> "Jet":
        x = np.atleast_1d(np.asarray(x, dtype=float))
        c = np.zeros((order + 1, x.size))
        c[0] = x
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, order: int, size: int) -> "Jet":
        c = np.zeros((order + 1, size))
        c[0] = value
        return cls(c)

    @classmethod
    def from_derivatives(cls, derivs) -> "Jet":
        """Build from stacked derivative values d_0..d_K (shape (K+1, N))."""
        derivs = np.asarray(derivs, dtype=float)
        scale = np.array([1.0 / factorial(k) for k in range(derivs.shape[0])])
        return cls(derivs * scale[:, None])

    def derivatives(self) -> np.ndarray:
        scale = np.array([float(factorial(k)) for k in range(self.order + 1)])
        return self.c * scale[:, None]

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        c = np.zeros_like(self.c)
        c[0] = other
        return Jet(c)

    def __add__(self, other):
        return Jet(self.c + self._coerce(other).c)

    __radd__ = __add__

    def __sub__(self, other):
        return Jet(self.c - self._coerce(other).c)

    def __rsub__(self, other):
        return Jet(self._coerce(other).c - self.c)

    def __neg__(self):
        return Jet(-self.c)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(_core.jet_mul(self.c, other.c))
        return Jet(self.c * other)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        return Jet(_core.jet_recip(self.c))

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet(self.c / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def exp(self) -> "Jet":
        return Jet(_core.jet_exp(self.c))

    def log(self) -> "Jet":
        return Jet(_core.jet_log(self.c))

    def power(self, gamma: float) -> "Jet":
        """self ** gamma for a positive base."""
        return (self.log() * gamma).exp()

    def where(self, mask, other: "Jet") -> "Jet":
        """Columnwise select: self where mask, other elsewhere."""
        return Jet(np.where(mask[None, :], self.c, other.c))


def sin_affine(x, alpha: float, beta: float, order: int) -> Jet:
    """Jet of sin(alpha * x + beta) in x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    phase = alpha * x + beta
    c = np.empty((order + 1, x.size))
    for k in range(order + 1):
        c[k] = np.sin(phase + 0.5 * np.pi * k) * alpha ** k / factorial(k)
    return Jet(c)


def cos_affine(x, alpha: float, beta: float, order: int) -> Jet:
    return sin_affine(x, alpha, beta + 0.5 * np.pi, order)


def trig_jet(T, x, order: int) -> Jet:
    """Jet of a TrigPolynomial from its exact termwise derivatives."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    rows = [np.asarray(T.derivative(k)(x), dtype=float) if k else np.asarray(T(x), dtype=float)
            for k in range(order + 1)]
    return Jet.from_derivatives(np.vstack(rows))
