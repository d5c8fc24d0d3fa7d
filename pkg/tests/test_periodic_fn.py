import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from comonotone.errors import UnsupportedOrder
from comonotone.periodic_fn import (PanelIntegrator, PeriodicFunctionModel, clustered_model,
                                    comonotone_model,
                                    cutoff_antiderivative_model, cutoff_product_model, derivative,
                                    derivative_defect, eval_bump, fd_only_model, periodicity_defect,
                                    sin_model, wrap)
from comonotone.trig_poly import ExtremaCycle, pi_product, sin_power


def test_bump_values():
    assert eval_bump(3.0) == 1.0
    assert eval_bump(0.5) == 0.0
    v = eval_bump(1.5)
    assert 0.0 < v < 1.0 and eval_bump(-1.5) == pytest.approx(v, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.floats(1.0, 1.999), st.floats(1e-3, 0.5))
def test_bump_monotone_between_plateaus(x, dx):
    assert eval_bump(min(x + dx, 2.0)) >= eval_bump(x)


def test_sine_derivatives():
    f = sin_model()
    assert derivative(f, 1, 0.0) == pytest.approx(1.0)
    assert derivative(f, 2, np.pi / 2) == pytest.approx(-1.0)


def test_cutoff_product_vanishes_inside():
    F = cutoff_product_model(sin_power(1), 0.1)
    assert F.deriv(1)(0.05) == pytest.approx(0.0, abs=1e-15)
    assert F(1.0) == pytest.approx(np.sin(1.0))


def test_cutoff_derivatives_match_finite_differences():
    F = cutoff_product_model(sin_power(3), 0.2)
    for j in (1, 2, 3):
        assert derivative_defect(F, j) < 1e-5


def test_cutoff_antiderivative_is_periodic_and_differentiates_back():
    b = 0.15
    tau = sin_power(3)
    F = cutoff_antiderivative_model(tau, b)
    f = cutoff_product_model(tau, b)
    assert periodicity_defect(F) < 1e-10
    x = np.linspace(-np.pi, np.pi, 41)
    assert np.allclose(F.deriv(1)(x), f(x), atol=1e-12)
    # outside the cutoff window F differs from the exact antiderivative by a constant
    far = np.array([1.0, 2.0, -2.5])
    gap = F(far) - F.big_tau(far)
    assert np.ptp(gap) < 1e-10


def test_panel_integrator_against_closed_form():
    I = PanelIntegrator(np.cos, -np.pi, np.pi, origin=0.0)
    x = np.linspace(-3, 3, 13)
    assert np.allclose(I(x), np.sin(x), atol=1e-13)
    assert abs(I.total) < 1e-13


@pytest.mark.parametrize("points, gamma", [((-1.3, 1.7), 0.5), ((-1.3, 1.7), 2.5),
                                           ((-2.6, -1.1, 0.4, 2.1), 1.5)])
def test_comonotone_model_membership(points, gamma):
    Y = ExtremaCycle(points)
    f = comonotone_model(Y, gamma=gamma)
    assert abs(f.period_defect) < 1e-10
    assert periodicity_defect(f) < 1e-9
    x = f.sample_grid(4096)
    prod = np.asarray(f.deriv(1)(x)) * pi_product(Y, x) * Y.anchor
    assert prod.min() >= -1e-12
    assert derivative_defect(f, 2) < 1e-4


def test_fd_fallback_and_order_limit():
    f = fd_only_model(sin_model())
    assert derivative(f, 2, 0.7) == pytest.approx(-np.sin(0.7), abs=1e-6)
    with pytest.raises(UnsupportedOrder):
        derivative(f, 40, 0.0)


def test_wrap():
    assert wrap(np.pi + 0.1) == pytest.approx(-np.pi + 0.1)
    assert wrap(-np.pi) == pytest.approx(-np.pi)


@pytest.mark.parametrize("points", [(-0.1, 0.1), (-0.1, -0.02, 0.03, 0.1)])
def test_clustered_model_membership(points):
    Y = ExtremaCycle(points)
    f = clustered_model(Y)
    assert periodicity_defect(f) < 1e-9
    x = f.sample_grid(8192)
    prod = np.asarray(f.deriv(1)(x)) * pi_product(Y, x) * Y.anchor
    assert prod.min() >= -1e-12 * np.abs(prod).max()
