import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from comonotone.smoothness import (Resolution, difference_coefficients, finite_difference,
                                   modulus_circle, modulus_interval, step_grid)


def test_difference_coefficients():
    assert difference_coefficients(3).tolist() == [1, -3, 3, -1]


@pytest.mark.parametrize("g, x, h, k, expected", [
    (lambda z: 5.0 + 0 * np.asarray(z), 0.0, 0.3, 1, 0.0),
    (lambda z: np.asarray(z) ** 2, 0.0, 1.0, 2, 2.0),
    (lambda z: np.asarray(z), 1.0, 0.5, 2, 0.0),
])
def test_finite_difference_oracles(g, x, h, k, expected):
    assert finite_difference(g, x, h, k) == pytest.approx(expected, abs=1e-14)


@pytest.mark.parametrize("t", [np.pi / 8, np.pi / 4, np.pi / 2])
def test_first_modulus_of_sine(t):
    assert modulus_circle(np.sin, 1, t).value == pytest.approx(2 * np.sin(t / 2), abs=1e-4)


def test_full_period_modulus_of_sine():
    assert modulus_circle(np.sin, 1, 2 * np.pi).value == pytest.approx(2.0, abs=1e-4)


def test_constant_has_zero_modulus():
    const = lambda z: np.full_like(np.asarray(z, dtype=float), 3.0)
    for k in (1, 2, 4):
        assert modulus_circle(const, k, 0.5).value == 0.0


def test_interval_oracles():
    assert modulus_interval(lambda z: 3 * z + 1, 2, 0.1, 0, 1).value <= 1e-12
    assert modulus_interval(lambda z: z ** 2, 2, 0.1, 0, 1).value == pytest.approx(0.02, abs=1e-10)
    assert modulus_interval(lambda z: z ** 3, 3, 0.2, -1, 1).value == pytest.approx(0.048, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.lists(st.floats(-3, 3), min_size=1, max_size=4))
def test_low_degree_polynomials_vanish(k, coeffs):
    coeffs = coeffs[:k]  # degree < k
    val = modulus_interval(lambda z: np.polyval(coeffs, z), k, 0.3, -1, 1).value
    assert val <= 1e-9


def test_monotone_in_t_on_nested_grids():
    hs = tuple(0.4 * 2.0 ** -j for j in range(6))
    res = Resolution(h_values=hs)
    vals = [modulus_circle(np.cos, 2, t, res).value for t in sorted(hs)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_step_grid_contains_t():
    hs = step_grid(0.3, 8)
    assert hs.max() == pytest.approx(0.3) and np.all(hs > 0)
