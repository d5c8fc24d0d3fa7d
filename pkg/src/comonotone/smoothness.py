"""Finite differences and moduli of smoothness on the circle and on intervals.

The modulus is a supremum over step and position; it is estimated from below
by a maximum over finite grids.  The step grid always contains t itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from . import _core
from .errors import EmptyRange

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class Resolution:
    """Grid spec for modulus estimates.

    ``h_values`` (fractions are not implied; absolute steps) overrides the
    default step grid; steps above t are dropped and t is always added.
    ``x_extra`` adds positions to the uniform x grid.
    """

    h_count: int = 64
    x_count: int = 2048
    x_extra: tuple = ()
    h_values: tuple | None = None


DEFAULT = Resolution()
COARSE = Resolution(h_count=16, x_count=128)


@dataclass
class ModulusEstimate:
    value: float
    k: int
    t: float
    grid_h_count: int
    grid_x_count: int
    interval: tuple | None = None

    def __float__(self):
        return float(self.value)


def difference_coefficients(k: int) -> np.ndarray:
    return np.array([(-1) ** i * comb(k, i) for i in range(k + 1)], dtype=float)


def finite_difference(g, x, h: float, k: int):
    """Delta_h^k(g, x) = sum_i (-1)^i C(k,i) g(x + i h)."""
    if k < 1 or k > 8:
        raise ValueError("k must be in 1..8")
    xa = np.asarray(x, dtype=float)
    acc = 0.0
    for i, c in enumerate(difference_coefficients(k)):
        acc = acc + c * np.asarray(g(xa + i * h), dtype=float)
    return acc if xa.ndim else float(acc)


def step_grid(t: float, count: int, h_values: Sequence[float] | None = None) -> np.ndarray:
    """Half uniform, half geometric steps in (0, t], always including t."""
    if h_values is not None:
        hs = np.asarray([h for h in h_values if 0.0 < h <= t], dtype=float)
        return np.unique(np.append(hs, t))
    half = max(count // 2, 1)
    uniform = t * np.arange(1, half + 1) / half
    geometric = t * 2.0 ** (-np.arange(1, count - half + 1) / 4.0)
    return np.unique(np.concatenate((uniform, geometric, [t])))


def _focus_points(g) -> list:
    pts = []
    for center, radius in getattr(g, "focus", ()) or ():
        pts.append(np.linspace(center - radius, center + radius, 257))
    bps = getattr(g, "breakpoints", ()) or ()
    if len(bps):
        pts.append(np.asarray(bps, dtype=float))
    return pts


def _sup_over_steps(g, k, hs, x_for_h) -> float:
    coeffs = difference_coefficients(k)
    best = 0.0
    for h in hs:
        x = x_for_h(h)
        if x.size == 0:
            continue
        vals = np.vstack([np.asarray(g(x + i * h), dtype=float) for i in range(k + 1)])
        best = max(best, _core.fd_sup(vals, coeffs))
    return best


def modulus_circle(g, k: int, t: float, resolution: Resolution = DEFAULT) -> ModulusEstimate:
    """omega_k(g, t) for 2pi-periodic g (a grid lower bound of the supremum).

    Focus windows and breakpoints declared on a model are added to the x grid.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    t = min(t, TWO_PI)
    hs = step_grid(t, resolution.h_count, resolution.h_values)
    x = -np.pi + TWO_PI * np.arange(resolution.x_count) / resolution.x_count
    extra = _focus_points(g) + [np.asarray(resolution.x_extra, dtype=float)]
    # a feature at c is probed by every window start x in [c - k h, c]
    feats = np.concatenate(extra) if extra else np.zeros(0)

    def x_for_h(h):
        if feats.size == 0:
            return x
        shifted = np.concatenate([feats - j * h / 2.0 for j in range(2 * k + 1)])
        return np.concatenate((x, shifted))

    value = _sup_over_steps(g, k, hs, x_for_h)
    return ModulusEstimate(value, k, t, hs.size, resolution.x_count)


def modulus_interval(g, k: int, t: float, a: float, b: float,
                     resolution: Resolution = DEFAULT) -> ModulusEstimate:
    """omega_k(g, t; [a, b]): sup over h <= t of ||Delta_h^k g||_[a, b - k h]."""
    if not b > a:
        raise EmptyRange("interval [%g, %g] is empty" % (a, b))
    if t <= 0:
        raise ValueError("t must be positive")
    t_eff = min(t, (b - a) / k)
    hs = step_grid(t_eff, resolution.h_count, resolution.h_values)
    extra = np.asarray(resolution.x_extra, dtype=float)

    def x_for_h(h):
        right = b - k * h
        if right < a:
            return np.zeros(0)
        x = np.linspace(a, right, resolution.x_count)
        if extra.size:
            x = np.concatenate((x, extra[(extra >= a) & (extra <= right)]))
        return x

    value = _sup_over_steps(g, k, hs, x_for_h)
    return ModulusEstimate(value, k, t, hs.size, resolution.x_count, (a, b))
