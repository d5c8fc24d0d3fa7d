"""Pure numpy implementations of the hot kernels.

Mirrors ``_kernels.pyx`` one to one; selected by ``_core`` when the compiled
extension is unavailable or ``COMONOTONE_PURE=1`` is set.

Jets are float64 arrays of shape (K+1, N): row k holds the k-th Taylor
coefficient (derivative / k!) at each of N points.
"""
import numpy as np


def jet_mul(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    K = a.shape[0]
    out = np.zeros_like(a)
    for k in range(K):
        acc = a[0] * b[k]
        for i in range(1, k + 1):
            acc = acc + a[i] * b[k - i]
        out[k] = acc
    return out


def jet_recip(a):
    a = np.asarray(a, dtype=float)
    K = a.shape[0]
    out = np.zeros_like(a)
    inv = 1.0 / a[0]
    out[0] = inv
    for k in range(1, K):
        acc = a[1] * out[k - 1]
        for i in range(2, k + 1):
            acc = acc + a[i] * out[k - i]
        out[k] = -inv * acc
    return out


def jet_exp(a):
    a = np.asarray(a, dtype=float)
    K = a.shape[0]
    out = np.zeros_like(a)
    out[0] = np.exp(a[0])
    for k in range(1, K):
        acc = a[1] * out[k - 1]
        for i in range(2, k + 1):
            acc = acc + i * a[i] * out[k - i]
        out[k] = acc / k
    return out


def jet_log(a):
    a = np.asarray(a, dtype=float)
    K = a.shape[0]
    out = np.zeros_like(a)
    out[0] = np.log(a[0])
    inv = 1.0 / a[0]
    for k in range(1, K):
        acc = k * a[k]
        for i in range(1, k):
            acc = acc - i * out[i] * a[k - i]
        out[k] = acc * inv / k
    return out


def newton_dd(t, v):
    """Top divided difference [t_0..t_m; v] by the two-term recurrence."""
    t = np.asarray(t, dtype=float)
    d = np.array(v, dtype=float)
    m = t.size - 1
    for level in range(1, m + 1):
        d[: m + 1 - level] = (d[1: m + 2 - level] - d[: m + 1 - level]) / (
            t[level:] - t[: m + 1 - level])
    return float(d[0])


def newton_dd_batch(t, v):
    """Row-wise :func:`newton_dd` for (M, m+1) arrays."""
    t = np.asarray(t, dtype=float)
    d = np.array(v, dtype=float)
    m = t.shape[1] - 1
    for level in range(1, m + 1):
        d[:, : m + 1 - level] = (d[:, 1: m + 2 - level] - d[:, : m + 1 - level]) / (
            t[:, level:] - t[:, : m + 1 - level])
    return d[:, 0].copy()


def fd_sup(values, coeffs):
    """max_j |sum_i coeffs[i] * values[i, j]| (0 for an empty grid)."""
    values = np.asarray(values, dtype=float)
    if values.shape[1] == 0:
        return 0.0
    acc = np.asarray(coeffs, dtype=float) @ values
    return float(np.max(np.abs(acc)))
