# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Same signatures and semantics; loops replace the temporary arrays that the
numpy versions allocate.
"""

import numpy as np

from libc.math cimport fabs, INFINITY


cdef inline double _sgn(double v) nogil:
    if v > 0.0:
        return 1.0
    if v < 0.0:
        return -1.0
    return 0.0


def l1_rho_pm(const double[:, ::1] X, const double[:, ::1] Y, double tol):
    cdef Py_ssize_t m = X.shape[0], n = X.shape[1], i, k
    cdef double nx, s, z, thr, a, zero
    plus = np.empty(m)
    minus = np.empty(m)
    cdef double[::1] p = plus, q = minus
    with nogil:
        for i in range(m):
            nx = 0.0
            for k in range(n):
                nx += fabs(X[i, k])
            thr = tol * nx
            s = 0.0
            z = 0.0
            for k in range(n):
                # branch-free: the zero pattern of x is data dependent
                a = fabs(X[i, k])
                zero = <double>(a <= thr)
                z += zero * fabs(Y[i, k])
                s += (1.0 - zero) * _sgn(X[i, k]) * Y[i, k]
            p[i] = nx * (s + z)
            q[i] = nx * (s - z)
    return plus, minus


def linf_rho_pm(const double[:, ::1] X, const double[:, ::1] Y, double tol):
    cdef Py_ssize_t m = X.shape[0], n = X.shape[1], i, k
    cdef double nx, hi, lo, v, thr
    plus = np.empty(m)
    minus = np.empty(m)
    cdef double[::1] p = plus, q = minus
    with nogil:
        for i in range(m):
            nx = 0.0
            for k in range(n):
                if fabs(X[i, k]) > nx:
                    nx = fabs(X[i, k])
            thr = (1.0 - tol) * nx
            hi = -INFINITY
            lo = INFINITY
            for k in range(n):
                if fabs(X[i, k]) >= thr:
                    v = _sgn(X[i, k]) * Y[i, k]
                    if v > hi:
                        hi = v
                    if v < lo:
                        lo = v
            p[i] = nx * hi
            q[i] = nx * lo
    return plus, minus


def polygon_norms(const double[:, ::1] F, const double[:, ::1] P):
    cdef Py_ssize_t m = P.shape[0], e = F.shape[0], i, j
    cdef double best, v
    out = np.empty(m)
    cdef double[::1] o = out
    with nogil:
        for i in range(m):
            best = -INFINITY
            for j in range(e):
                v = F[j, 0] * P[i, 0] + F[j, 1] * P[i, 1]
                if v > best:
                    best = v
            o[i] = best
    return out


def polygon_rho_pm(const double[:, ::1] F, const double[:, ::1] X,
                   const double[:, ::1] Y, double tol):
    cdef Py_ssize_t m = X.shape[0], e = F.shape[0], i, j
    cdef double nx, v, w, hi, lo, thr
    plus = np.empty(m)
    minus = np.empty(m)
    cdef double[::1] p = plus, q = minus
    with nogil:
        for i in range(m):
            nx = -INFINITY
            for j in range(e):
                v = F[j, 0] * X[i, 0] + F[j, 1] * X[i, 1]
                if v > nx:
                    nx = v
            thr = nx * (1.0 - tol)
            hi = -INFINITY
            lo = INFINITY
            for j in range(e):
                v = F[j, 0] * X[i, 0] + F[j, 1] * X[i, 1]
                if v >= thr:
                    w = F[j, 0] * Y[i, 0] + F[j, 1] * Y[i, 1]
                    if w > hi:
                        hi = w
                    if w < lo:
                        lo = w
            p[i] = nx * hi
            q[i] = nx * lo
    return plus, minus
