import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from comonotone import _core
from comonotone import _kernels_py as py
from comonotone.jets import Jet, sin_affine

compiled = _core.compiled_kernels
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def _jets(seed, K=6, N=17):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(K, N))
    a[0] = rng.uniform(0.5, 2.0, N)  # positive for recip / log
    return a, rng.normal(size=(K, N))


@needs_compiled
@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 31), st.integers(1, 9))
def test_jet_kernels_agree(seed, K):
    a, b = _jets(seed, K)
    assert np.allclose(compiled.jet_mul(a, b), py.jet_mul(a, b), rtol=1e-13, atol=1e-13)
    for name in ("jet_recip", "jet_exp", "jet_log"):
        assert np.allclose(getattr(compiled, name)(a), getattr(py, name)(a),
                           rtol=1e-12, atol=1e-12), name


@needs_compiled
@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 31), st.integers(1, 6))
def test_dd_and_fd_kernels_agree(seed, m):
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(0, 1, (20, m + 1)), axis=1) + np.arange(m + 1) * 0.05
    v = rng.normal(size=t.shape)
    assert np.allclose(compiled.newton_dd_batch(t, v), py.newton_dd_batch(t, v), rtol=1e-12)
    assert compiled.newton_dd(t[0], v[0]) == pytest.approx(py.newton_dd(t[0], v[0]), rel=1e-12)
    vals = rng.normal(size=(m + 1, 50))
    coeffs = rng.normal(size=m + 1)
    assert compiled.fd_sup(vals, coeffs) == pytest.approx(py.fd_sup(vals, coeffs), rel=1e-13)


def test_fd_sup_empty():
    assert py.fd_sup(np.zeros((3, 0)), [1, -2, 1]) == 0.0


def test_jet_identities():
    x = np.linspace(-1, 1, 9)
    s = sin_affine(x, 1.0, 0.0, 5)
    c = sin_affine(x, 1.0, 0.5 * np.pi, 5)
    one = s * s + c * c
    assert np.allclose(one.c[0], 1.0) and np.allclose(one.c[1:], 0.0, atol=1e-14)
    e = Jet.variable(x, 5).exp()
    assert np.allclose(e.derivatives(), np.exp(x)[None, :].repeat(6, axis=0))


def test_pure_backend_selected_by_environment():
    code = "import comonotone._core as c; print(c.BACKEND)"
    env = dict(os.environ, COMONOTONE_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
