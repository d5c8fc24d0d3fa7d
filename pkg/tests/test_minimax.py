import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from comonotone.counterexamples import build, lp_floor
from comonotone.errors import Infeasible
from comonotone.minimax import (alternation_count, best_algebraic, best_comonotone,
                                best_unconstrained, solve_lp, trig_grid)
from comonotone.periodic_fn import comonotone_model, trig_model
from comonotone.trig_poly import ExtremaCycle, TrigPolynomial, is_comonotone


def test_lp_trivial_cases():
    # min eps s.t. -eps <= 0 <= eps
    res = solve_lp([1.0], A_ub=[[-1.0]], b_ub=[0.0])
    assert res.fun == pytest.approx(0.0, abs=1e-12)
    # min eps s.t. |1 - c| <= eps, variables (c, eps)
    res = solve_lp([0.0, 1.0], A_ub=[[-1.0, -1.0], [1.0, -1.0]], b_ub=[-1.0, 1.0])
    assert res.x == pytest.approx([1.0, 0.0], abs=1e-12)


def test_lp_infeasible():
    with pytest.raises(Infeasible):
        solve_lp([1.0], A_ub=[[1.0], [-1.0]], b_ub=[0.0, -1.0])


def test_best_line_to_parabola():
    sol = best_algebraic(lambda x: x ** 2, 0.0, 1.0, 2)
    assert sol.value == pytest.approx(0.125, abs=1e-3)
    assert sol.alternation_count >= 3


def test_best_constant_to_kink():
    sol = best_algebraic(lambda x: np.abs(x - 0.5), 0.0, 1.0, 1)
    assert sol.value == pytest.approx(0.25, abs=1e-3)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=1, max_size=4))
def test_algebraic_exact_for_low_degree(coeffs):
    sol = best_algebraic(lambda x: np.polyval(coeffs, x), -1.0, 2.0, len(coeffs))
    assert sol.value <= 1e-10 * max(1.0, float(np.max(np.abs(coeffs))) * 10)


def test_unconstrained_oracles():
    assert best_unconstrained(np.cos, 1).value == pytest.approx(1.0, abs=1e-6)
    assert best_unconstrained(lambda x: np.cos(2 * x), 2).value == pytest.approx(1.0, abs=1e-6)
    T = TrigPolynomial(3, 0.2, [0.5, -0.1], [0.3, 0.7])
    assert best_unconstrained(trig_model(T), 3).value <= 1e-9


def test_comonotone_reproduces_comonotone_polynomial():
    # cos has its maximum at 0 and minimum at -pi
    Y = ExtremaCycle((-np.pi, 0.0), anchor=-1)
    sol = best_comonotone(trig_model(TrigPolynomial(2, 0.0, [1.0], [0.0])), Y, 4)
    assert sol.value <= 1e-8


@pytest.fixture(scope="module")
def corpus():
    Y = ExtremaCycle((-2.6, -1.1, 0.4, 2.1))
    return comonotone_model(Y, gamma=1.5), Y


def test_constraint_only_raises_the_error(corpus):
    f, Y = corpus
    prev = np.inf
    for n in (8, 16, 32):
        unc = best_unconstrained(f, n).value
        com = best_comonotone(f, Y, n)
        assert com.value >= unc - 1e-9
        assert com.value <= prev + 1e-12
        assert is_comonotone(com.polynomial, Y, grid_count=com.grid_count).worst_violation < 1e-6
        prev = com.value


def test_counterexample_value_above_proof_floor():
    inst = build("T2_7", 8, 2, 0, override=True)
    extra = np.linspace(-2.5 * inst.b, 2.5 * inst.b, 401)
    val = best_comonotone(inst.F, inst.Y, inst.n, extra=extra).value
    assert val > 0 and val >= 0.5 * lp_floor(inst) - 1e-9


def test_grid_and_alternation_helpers():
    x = trig_grid(8)
    assert x.size >= 16 and np.all(np.diff(x) > 0)
    assert alternation_count(np.array([1, -1, 1, -1, 0.2]), 0.5) == 4
