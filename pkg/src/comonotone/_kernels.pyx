# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, fabs

cnp.import_array()


# Loops run row-wise (k, i outer; the point index j innermost) so every
# access is contiguous and the inner loop vectorises.

def jet_mul(a, b):
    cdef double[:, ::1] A = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[:, ::1] B = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t K = A.shape[0], N = A.shape[1], k, i, j
    out = np.zeros((K, N))
    cdef double[:, ::1] C = out
    with nogil:
        for k in range(K):
            for i in range(k + 1):
                for j in range(N):
                    C[k, j] += A[i, j] * B[k - i, j]
    return out


def jet_recip(a):
    cdef double[:, ::1] A = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t K = A.shape[0], N = A.shape[1], k, i, j
    out = np.zeros((K, N))
    cdef double[:, ::1] C = out
    with nogil:
        for j in range(N):
            C[0, j] = 1.0 / A[0, j]
        for k in range(1, K):
            for i in range(1, k + 1):
                for j in range(N):
                    C[k, j] += A[i, j] * C[k - i, j]
            for j in range(N):
                C[k, j] = -C[0, j] * C[k, j]
    return out


def jet_exp(a):
    cdef double[:, ::1] A = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t K = A.shape[0], N = A.shape[1], k, i, j
    out = np.zeros((K, N))
    cdef double[:, ::1] C = out
    with nogil:
        for j in range(N):
            C[0, j] = exp(A[0, j])
        for k in range(1, K):
            for i in range(1, k + 1):
                for j in range(N):
                    C[k, j] += i * A[i, j] * C[k - i, j]
            for j in range(N):
                C[k, j] = C[k, j] / k
    return out


def jet_log(a):
    cdef double[:, ::1] A = np.ascontiguousarray(a, dtype=np.float64)
    cdef Py_ssize_t K = A.shape[0], N = A.shape[1], k, i, j
    out = np.zeros((K, N))
    cdef double[:, ::1] C = out
    with nogil:
        for j in range(N):
            C[0, j] = log(A[0, j])
        for k in range(1, K):
            for j in range(N):
                C[k, j] = k * A[k, j]
            for i in range(1, k):
                for j in range(N):
                    C[k, j] -= i * C[i, j] * A[k - i, j]
            for j in range(N):
                C[k, j] = C[k, j] / (A[0, j] * k)
    return out


def newton_dd(t, v):
    cdef double[::1] T = np.ascontiguousarray(t, dtype=np.float64)
    cdef double[::1] D = np.array(v, dtype=np.float64)
    cdef Py_ssize_t m = T.shape[0] - 1, level, i
    with nogil:
        for level in range(1, m + 1):
            for i in range(m + 1 - level):
                D[i] = (D[i + 1] - D[i]) / (T[i + level] - T[i])
    return D[0]


def newton_dd_batch(t, v):
    cdef double[:, ::1] T = np.ascontiguousarray(t, dtype=np.float64)
    cdef double[:, ::1] D = np.array(v, dtype=np.float64, order="C")
    cdef Py_ssize_t M = T.shape[0], m = T.shape[1] - 1, level, i, r
    out = np.empty(M)
    cdef double[::1] O = out
    with nogil:
        for r in range(M):
            for level in range(1, m + 1):
                for i in range(m + 1 - level):
                    D[r, i] = (D[r, i + 1] - D[r, i]) / (T[r, i + level] - T[r, i])
            O[r] = D[r, 0]
    return out


def fd_sup(values, coeffs):
    cdef double[:, ::1] V = np.ascontiguousarray(values, dtype=np.float64)
    cdef double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef Py_ssize_t K = V.shape[0], N = V.shape[1], i, j, lo, hi
    cdef double best = 0.0
    cdef double buf[512]
    with nogil:
        # blocks of columns keep the accumulator in cache
        for lo in range(0, N, 512):
            hi = min(lo + 512, N)
            for j in range(hi - lo):
                buf[j] = 0.0
            for i in range(K):
                for j in range(lo, hi):
                    buf[j - lo] += c[i] * V[i, j]
            for j in range(hi - lo):
                if fabs(buf[j]) > best:
                    best = fabs(buf[j])
    return best
