import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from comonotone.trig_poly import (ExtremaCycle, TrigPolynomial, bernstein_ratio, is_comonotone,
                                  pi_polynomial, pi_product, sin_power)


def test_evaluation_oracles():
    assert TrigPolynomial.constant(3.0)(1.234) == pytest.approx(3.0)
    assert TrigPolynomial(2, 0.0, [0.0], [1.0])(np.pi / 2) == pytest.approx(1.0)
    assert TrigPolynomial(2, 0.0, [1.0], [1.0])(np.pi / 4) == pytest.approx(np.sqrt(2))


def test_derivative_rules():
    d = TrigPolynomial(2, 0.0, [0.0], [1.0]).derivative()
    assert d(0.3) == pytest.approx(np.cos(0.3))
    assert d.degree_bound == 2
    assert TrigPolynomial.constant(2.0).derivative().sup_norm() == 0.0
    c3 = TrigPolynomial(4, 0.0, [0, 0, 1.0], [0, 0, 0]).derivative()
    x = np.linspace(-3, 3, 7)
    assert np.allclose(c3(x), -3 * np.sin(3 * x))


def test_pi_product_oracles():
    Y = ExtremaCycle((0.0, np.pi))
    assert pi_product(Y, 0.0) == 0.0
    assert pi_product(Y, np.pi / 2) == pytest.approx(-0.5)
    Y2 = ExtremaCycle((-2.0, -1.0, 0.5, 2.5))
    assert abs(pi_product(Y2, 0.5 + 2 * np.pi)) < 1e-12


def test_pi_polynomial_matches_product():
    Y = ExtremaCycle((-2.6, -1.1, 0.4, 2.1))
    x = np.linspace(-np.pi, np.pi, 101)
    assert np.allclose(pi_polynomial(Y)(x), pi_product(Y, x), atol=1e-12)


def test_is_comonotone_oracles():
    Y = ExtremaCycle((0.0, np.pi))
    rep = is_comonotone(TrigPolynomial.constant(1.0), Y)
    assert rep.ok and rep.worst_violation == 0.0
    sin2 = TrigPolynomial(3, 0.0, [0, 0], [0, 1.0])
    assert not is_comonotone(sin2, Y).ok


def test_cos_is_comonotone_with_its_extrema():
    # cos: maximum at 0, minimum at -pi
    Y = ExtremaCycle((-np.pi, 0.0), anchor=-1)
    assert is_comonotone(TrigPolynomial(2, 0.0, [1.0], [0.0]), Y).ok


def test_bernstein_oracles():
    n = 5
    T = TrigPolynomial(n, 0.0, [0, 0, 0, 0], [0, 0, 0, 1.0])
    assert bernstein_ratio(T, 1) == pytest.approx(4 / 5, rel=1e-6)
    assert bernstein_ratio(TrigPolynomial.constant(2.0, n), 1) == 0.0


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(1, 3), st.integers(0, 2 ** 31))
def test_bernstein_inequality(n, j, seed):
    rng = np.random.default_rng(seed)
    T = TrigPolynomial(n, rng.normal(), rng.normal(size=n - 1), rng.normal(size=n - 1))
    assert bernstein_ratio(T, j) <= 1 + 1e-8


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2 ** 31))
def test_record_round_trip_and_arithmetic(n, seed):
    rng = np.random.default_rng(seed)
    T = TrigPolynomial(n, rng.normal(), rng.normal(size=n - 1), rng.normal(size=n - 1))
    U = TrigPolynomial.from_record(T.to_record())
    x = np.linspace(-np.pi, np.pi, 33)
    assert np.allclose(U(x), T(x))
    assert np.allclose((T * T)(x), T(x) ** 2)
    assert np.allclose((T - T)(x), 0.0)
    Z = T - TrigPolynomial.constant(T.c0, n)
    assert np.allclose(Z.antiderivative().derivative()(x), Z(x))


def test_sin_power():
    x = np.linspace(-3, 3, 11)
    assert np.allclose(sin_power(3)(x), np.sin(x) ** 3)
    assert np.allclose(sin_power(2, half_angle=True)(x), np.sin(x / 2) ** 2)


def test_cycle_validation():
    with pytest.raises(ValueError):
        ExtremaCycle((0.0,))
    with pytest.raises(ValueError):
        ExtremaCycle((1.0, 0.0))
    Y = ExtremaCycle((-1.0, 1.0))
    assert Y.s == 1 and Y.extended(3) == pytest.approx(-1.0 + 2 * np.pi)
