# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Mirrors ``_core_py`` function for function."""

import numpy as np

from libc.math cimport exp, sqrt, pow, INFINITY
from libc.stdlib cimport malloc, free

BACKEND = "cython"

cdef enum:
    MORSE = 0
    RIESZ = 1


cdef inline double _radial_derivative(int kind, double param, double r) noexcept nogil:
    if r == 0.0:
        return 0.0
    if kind == MORSE:
        return -param * exp(-param * r)
    return -param * pow(r, -param - 1.0)


cdef inline double _value(int kind, double param, double r) noexcept nogil:
    if kind == MORSE:
        return exp(-param * r)
    if r == 0.0:
        return INFINITY
    return pow(r, -param)


cdef void _project_row(double* v, double* buf, Py_ssize_t m) noexcept nogil:
    cdef Py_ssize_t j, k
    cdef double key, csum = 0.0, theta = 0.0, total = 0.0
    for j in range(m):
        buf[j] = v[j]
    # insertion sort, descending; m is tiny
    for j in range(1, m):
        key = buf[j]
        k = j - 1
        while k >= 0 and buf[k] < key:
            buf[k + 1] = buf[k]
            k -= 1
        buf[k + 1] = key
    for j in range(m):
        csum += buf[j]
        if buf[j] - (csum - 1.0) / (j + 1) > 0.0:
            theta = (csum - 1.0) / (j + 1)
    for j in range(m):
        v[j] = v[j] - theta
        if v[j] < 0.0:
            v[j] = 0.0
        total += v[j]
    for j in range(m):
        v[j] = v[j] / total


def project_rows(const double[:, :] V):
    cdef Py_ssize_t N = V.shape[0], m = V.shape[1], i, j
    out_arr = np.empty((N, m), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double* buf = <double*> malloc(m * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(N):
                for j in range(m):
                    out[i, j] = V[i, j]
                _project_row(&out[i, 0], buf, m)
    finally:
        free(buf)
    return out_arr


def pairwise_increment(const double[:, :] W, const double[:, :] F, double tau, int kind, double param):
    cdef Py_ssize_t N = W.shape[0], m = W.shape[1], mf = F.shape[1]
    cdef Py_ssize_t i, j, l
    cdef double rf, rw, du, coef
    out_arr = np.zeros((N, m), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    with nogil:
        for i in range(N):
            for j in range(N):
                if j == i:
                    continue
                rf = 0.0
                for l in range(mf):
                    rf += (F[i, l] - F[j, l]) * (F[i, l] - F[j, l])
                rf = sqrt(rf)
                du = _radial_derivative(kind, param, rf)
                if du == 0.0:
                    continue
                rw = 0.0
                for l in range(m):
                    rw += (W[i, l] - W[j, l]) * (W[i, l] - W[j, l])
                rw = sqrt(rw)
                if rw == 0.0:
                    continue
                coef = du / rw
                for l in range(m):
                    out[i, l] -= coef * (W[i, l] - W[j, l])
            for l in range(m):
                out[i, l] *= tau / N
    return out_arr


def grad_image_increment(const double[:, :] F, double tau, int kind, double param):
    cdef Py_ssize_t N = F.shape[0], m = F.shape[1]
    cdef Py_ssize_t i, j, l
    cdef double r, du
    out_arr = np.zeros((N, m), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    with nogil:
        for i in range(N):
            for j in range(N):
                if j == i:
                    continue
                r = 0.0
                for l in range(m):
                    r += (F[i, l] - F[j, l]) * (F[i, l] - F[j, l])
                r = sqrt(r)
                if r == 0.0:
                    continue
                du = _radial_derivative(kind, param, r)
                for l in range(m):
                    out[i, l] += du * (F[i, l] - F[j, l]) / r
            for l in range(m):
                out[i, l] *= tau / N
    return out_arr


def ensemble_energy(const double[:, :] P, int kind, double param):
    cdef Py_ssize_t N = P.shape[0], m = P.shape[1], i, j, l
    cdef double r, total = 0.0
    with nogil:
        for i in range(N):
            for j in range(N):
                if j == i:
                    continue
                r = 0.0
                for l in range(m):
                    r += (P[i, l] - P[j, l]) * (P[i, l] - P[j, l])
                total += _value(kind, param, sqrt(r))
    return total / (<double> N * <double> N)


def nearest_distances(const double[:, :] ref, const double[:, :] sol):
    cdef Py_ssize_t R = ref.shape[0], N = sol.shape[0], m = ref.shape[1]
    cdef Py_ssize_t r, i, l
    cdef double best, d, diff
    out_arr = np.empty(R, dtype=np.float64)
    cdef double[::1] out = out_arr
    with nogil:
        for r in range(R):
            best = INFINITY
            for i in range(N):
                d = 0.0
                for l in range(m):
                    diff = ref[r, l] - sol[i, l]
                    d += diff * diff
                if d < best:
                    best = d
            out[r] = sqrt(best)
    return out_arr


def gibbs_consensus(const double[:, :, :] X, const double[:, :] S, double alpha):
    cdef Py_ssize_t N = X.shape[0], n = X.shape[1], d = X.shape[2]
    cdef Py_ssize_t i, h, l
    cdef double smin, wt, wsum
    out_arr = np.zeros((N, d), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    with nogil:
        for i in range(N):
            smin = S[i, 0]
            for h in range(1, n):
                if S[i, h] < smin:
                    smin = S[i, h]
            wsum = 0.0
            for h in range(n):
                wt = exp(-alpha * (S[i, h] - smin))
                wsum += wt
                for l in range(d):
                    out[i, l] += wt * X[i, h, l]
            for l in range(d):
                out[i, l] /= wsum
    return out_arr


def cbo_update(const double[:, :, :] X, const double[:, :] Y, const double[:, :, :] Z,
               double lam, double dt, double sigma):
    cdef Py_ssize_t N = X.shape[0], n = X.shape[1], d = X.shape[2]
    cdef Py_ssize_t i, h, l
    cdef double dist, x, diff
    cdef double drift = lam * dt, noise = sigma * sqrt(dt)
    out_arr = np.empty((N, n, d), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    with nogil:
        for i in range(N):
            for h in range(n):
                dist = 0.0
                for l in range(d):
                    diff = Y[i, l] - X[i, h, l]
                    dist += diff * diff
                dist = sqrt(dist)
                for l in range(d):
                    x = X[i, h, l] + drift * (Y[i, l] - X[i, h, l]) + noise * dist * Z[i, h, l]
                    if x < 0.0:
                        x = 0.0
                    elif x > 1.0:
                        x = 1.0
                    out[i, h, l] = x
    return out_arr
