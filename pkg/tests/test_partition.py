import numpy as np
import pytest
from numpy.polynomial import Polynomial

from comonotone.errors import HypothesisViolation, RegimeUnsupported, TooFewCells
from comonotone.partition import (PiecewisePolynomial, PiNu, build_partition, comonotone_piece_full,
                                  comonotone_piece_partial, comonotone_sign, monotone_piece,
                                  probe_lemma_4_1_4_4, probe_lemma_4_5, shape_defect, stitch_report,
                                  stitch_S)
from comonotone.periodic_fn import clustered_model, comonotone_model, cos_model, sin_model
from comonotone.trig_poly import ExtremaCycle


class PolyModel:
    """An algebraic polynomial with the model interface used by the pieces."""

    def __init__(self, coef):
        self.p = Polynomial(coef)

    def __call__(self, x):
        return self.p(np.asarray(x, dtype=float))

    def deriv(self, j):
        return self.p.deriv(j) if j else self.p


# -- partition -------------------------------------------------------------------

def test_two_components_with_wraparound():
    part = build_partition(16, ExtremaCycle((0.0, np.pi - 0.01)))
    h = np.pi / 16
    assert len(part.components) == 2
    assert part.rotation_cells > 0
    for comp in part.components:
        assert comp.b - comp.a <= 6 * h + 1e-12
        assert comp.nu == 1
    # components and outside cells tile the period
    total = sum(c.b - c.a for c in part.components) + sum(b - a for a, b in part.outside_cells)
    assert total == pytest.approx(2 * np.pi)


def test_clustered_cycle_gives_one_component():
    part = build_partition(16, ExtremaCycle((0.01, 0.05, 0.1, 0.15)))
    assert part.single_component
    assert part.components[0].nu == 4


@pytest.mark.parametrize("s", [1, 2])
def test_too_few_cells(s):
    pts = np.linspace(-2, 2, 2 * s)
    with pytest.raises(TooFewCells):
        build_partition(6 * s, ExtremaCycle(tuple(pts)))
    assert not build_partition(6 * s, ExtremaCycle(tuple(pts)), strict=False).single_component


# -- local pieces ----------------------------------------------------------------

def test_monotone_piece_affine_and_constant():
    p = monotone_piece(PolyModel([1.0, 2.0]), 0.0, 1.0, 1, 2)
    x = np.linspace(0, 1, 101)
    assert np.max(np.abs(p.poly(x) - (1 + 2 * x))) <= 1e-12
    c = monotone_piece(PolyModel([3.0]), 0.0, 1.0, 1, 2)
    assert np.max(np.abs(c.poly(x) - 3.0)) == 0.0


def test_monotone_piece_x_plus_sin():
    f = PolyModel([0.0, 1.0])
    f_sin = sin_model()

    class XS:
        def __call__(self, x):
            return f(x) + f_sin(x)

        def deriv(self, j):
            return (lambda x: 1 + np.cos(x)) if j == 1 else f_sin.deriv(j)

    g = XS()
    p = monotone_piece(g, 0.0, 1.0, 1, 3)
    x = np.linspace(0, 1, 1001)
    assert p.poly(0.0) == pytest.approx(g(0.0), abs=1e-9)
    assert p.poly(1.0) == pytest.approx(g(1.0), abs=1e-9)
    assert p.poly.deriv()(x).min() >= -1e-9
    assert p.ratio < 100


def test_full_piece_reproduces_its_own_class():
    # f' = (x - 1.5)(1 + 0.1 x) has degree r + 1 = 2, so the interpolant is exact
    fp = Polynomial([1.5, 0.0, 0.0]) * 0 + Polynomial([-1.5, 1.0]) * Polynomial([1.0, 0.1])
    f = PolyModel(fp.integ().coef)
    piece = comonotone_piece_full(f, 0.0, 3.0, [1.5], 1, 1.0)
    x = np.linspace(0, 3, 301)
    assert np.max(np.abs(piece.poly(x) - f(x))) <= 1e-9
    assert piece.sign == 1


def test_full_piece_on_a_model_component():
    Y = ExtremaCycle((-1.3, 1.7))
    f = comonotone_model(Y, gamma=2.5)
    n = 16
    comp = [c for c in build_partition(n, Y).components if c.a < 1.7 < c.b][0]
    piece = comonotone_piece_full(f, comp.a, comp.b, comp.knots, 1, np.pi / n)
    x = np.linspace(comp.a, comp.b, 10001)
    prod = piece.sign * piece.poly.deriv()(x) * PiNu(comp.knots)(x)
    assert prod.min() >= -1e-9 * np.abs(prod).max()
    assert piece.poly(comp.a) == pytest.approx(f(comp.a), abs=1e-9)
    assert np.isfinite(piece.ratio)


def test_full_piece_geometry_gate():
    with pytest.raises(HypothesisViolation):
        comonotone_piece_full(sin_model(), 1.0, 2.5, [1.2], 1, 0.5)


def test_partial_piece_with_flat_data():
    piece = comonotone_piece_partial(PolyModel([2.0]), 0.0, 3.0, [1.5], 3, 3, 1.0)
    x = np.linspace(0, 3, 101)
    assert np.max(np.abs(piece.poly(x) - 2.0)) <= 1e-12
    assert piece.constant == 0.0


def test_partial_piece_postconditions():
    f = sin_model()
    h = 0.2
    a = np.pi / 2 - 1.5 * h
    piece = comonotone_piece_partial(f, a, a + 3 * h, [np.pi / 2], 3, 3, h)
    x = np.linspace(a, a + 3 * h, 10001)
    prod = piece.sign * piece.poly.deriv()(x) * (x - np.pi / 2)
    assert prod.min() >= -1e-9
    assert piece.poly(a) == pytest.approx(f(a), abs=1e-9)
    assert len(piece.poly.coef) <= 3 + 3
    with pytest.raises(HypothesisViolation):
        comonotone_piece_partial(f, a, a + 3 * h, [np.pi / 2], 1, 3, h)


def test_sign_detection():
    x = np.linspace(-1, 1, 11)
    assert comonotone_sign(x, x) == 1
    assert comonotone_sign(-x, x) == -1
    with pytest.raises(HypothesisViolation):
        comonotone_sign(x ** 2 - 0.25, x)


# -- probes ----------------------------------------------------------------------

def test_interval_probe_finite():
    f = sin_model()
    rep = probe_lemma_4_5(f, np.pi / 2 - 0.3, np.pi / 2 + 0.3, [np.pi / 2], 0, 0.2)
    assert 0 < rep.ratio < 10


@pytest.mark.parametrize("pattern", [(-1.0, 1.0), (-1.0, -0.2, 0.3, 1.0)])
def test_cluster_probe_scales_with_h(pattern):
    ratios = []
    for h in (0.1, 0.05, 0.025):
        Y = ExtremaCycle(tuple(h * np.array(pattern)))
        ratios.append(probe_lemma_4_1_4_4(clustered_model(Y), Y, h, 2).ratio)
    assert all(np.isfinite(ratios)) and max(ratios) / min(ratios) < 1.5


def test_cluster_probe_gates():
    Y = ExtremaCycle((-0.1, 0.1))
    f = clustered_model(Y)
    with pytest.raises(HypothesisViolation):
        probe_lemma_4_1_4_4(f, Y, 0.01, 2)
    const = PolyModel([2.0])
    assert probe_lemma_4_1_4_4(const, Y, 0.1, 2).lhs == 0.0


# -- stitching -------------------------------------------------------------------

def test_stitched_cos():
    Y = ExtremaCycle((0.0, np.pi))
    f = cos_model()
    S = stitch_S(f, Y, 16, 2, 3)
    rep = stitch_report(f, Y, 16, 2, 3, S)
    assert rep.continuity_defect <= 1e-9
    assert rep.sign_defect <= 1e-9
    assert S(0.3) == pytest.approx(S(0.3 + 2 * np.pi), abs=1e-9) if S.origin is not None else True
    assert rep.ratio < 10


def test_clustered_cycle_gives_constant():
    Y = ExtremaCycle((0.01, 0.05, 0.1, 0.15))
    f = clustered_model(Y)
    S = stitch_S(f, Y, 16, 2, 2)
    assert S.meta["kind"] == "constant"
    assert S(1.0) == pytest.approx(f(0.0))


def test_stitch_gates():
    Y = ExtremaCycle((-2.6, -1.1, 0.4, 2.1))
    f = comonotone_model(Y, gamma=1.5)
    with pytest.raises(TooFewCells):
        stitch_S(f, Y, 12, 2, 2)
    with pytest.raises(RegimeUnsupported):
        stitch_S(f, Y, 16, 1, 2)


def test_piecewise_round_trip():
    Y = ExtremaCycle((-1.3, 1.7))
    f = comonotone_model(Y, gamma=2.5)
    S = stitch_S(f, Y, 16, 1, 3)
    T = PiecewisePolynomial.from_json(S.to_json())
    x = np.linspace(-np.pi, np.pi, 257)
    assert np.allclose(T(x), S(x), atol=1e-13)
    assert shape_defect(T, Y) <= 1e-9
