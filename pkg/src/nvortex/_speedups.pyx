# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the pairwise vortex interactions.

Signature-compatible with ``_reference``; selected at import time by
``kernels``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport log, sqrt

cnp.import_array()

BACKEND_NAME = "compiled"


def min_pair_distance(object z):
    cdef const double[::1] zz = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t n = zz.shape[0] // 2
    cdef Py_ssize_t i, j
    cdef double dx, dy, r2, best = -1.0
    for i in range(n):
        for j in range(i + 1, n):
            dx = zz[2 * i] - zz[2 * j]
            dy = zz[2 * i + 1] - zz[2 * j + 1]
            r2 = dx * dx + dy * dy
            if best < 0.0 or r2 < best:
                best = r2
    return sqrt(best)


def hamiltonian(object gam, cnp.ndarray[double, ndim=1] z):
    cdef const double[::1] g = np.ascontiguousarray(gam, dtype=np.float64)
    cdef const double[::1] zz = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0]
    cdef Py_ssize_t i, j
    cdef double dx, dy, acc = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            dx = zz[2 * i] - zz[2 * j]
            dy = zz[2 * i + 1] - zz[2 * j + 1]
            acc += g[i] * g[j] * log(dx * dx + dy * dy)
    return -0.5 * acc


def gradient(object gam, cnp.ndarray[double, ndim=1] z):
    cdef const double[::1] g = np.ascontiguousarray(gam, dtype=np.float64)
    cdef const double[::1] zz = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0]
    out = np.zeros(2 * n)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j
    cdef double dx, dy, w
    for i in range(n):
        for j in range(i + 1, n):
            dx = zz[2 * i] - zz[2 * j]
            dy = zz[2 * i + 1] - zz[2 * j + 1]
            w = g[i] * g[j] / (dx * dx + dy * dy)
            o[2 * i] -= w * dx
            o[2 * i + 1] -= w * dy
            o[2 * j] += w * dx
            o[2 * j + 1] += w * dy
    return out


def hessian(object gam, cnp.ndarray[double, ndim=1] z):
    cdef const double[::1] g = np.ascontiguousarray(gam, dtype=np.float64)
    cdef const double[::1] zz = np.ascontiguousarray(z, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0]
    out = np.zeros((2 * n, 2 * n))
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j
    cdef double dx, dy, r2, c, axx, axy, ayy
    for i in range(n):
        for j in range(i + 1, n):
            dx = zz[2 * i] - zz[2 * j]
            dy = zz[2 * i + 1] - zz[2 * j + 1]
            r2 = dx * dx + dy * dy
            c = g[i] * g[j] / (r2 * r2)
            axx = c * (dy * dy - dx * dx)
            ayy = -axx
            axy = -2.0 * c * dx * dy
            o[2 * i, 2 * j] = axx
            o[2 * i, 2 * j + 1] = axy
            o[2 * i + 1, 2 * j] = axy
            o[2 * i + 1, 2 * j + 1] = ayy
            o[2 * j, 2 * i] = axx
            o[2 * j, 2 * i + 1] = axy
            o[2 * j + 1, 2 * i] = axy
            o[2 * j + 1, 2 * i + 1] = ayy
            o[2 * i, 2 * i] -= axx
            o[2 * i, 2 * i + 1] -= axy
            o[2 * i + 1, 2 * i] -= axy
            o[2 * i + 1, 2 * i + 1] -= ayy
            o[2 * j, 2 * j] -= axx
            o[2 * j, 2 * j + 1] -= axy
            o[2 * j + 1, 2 * j] -= axy
            o[2 * j + 1, 2 * j + 1] -= ayy
    return out
