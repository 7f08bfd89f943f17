# cython: language_level=3
"""Compiled DTW kernels. Mirrors ``tsnet._dtw_py`` operation for operation so
both backends return bit-identical results."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, INFINITY

cnp.import_array()


cdef inline double _min3(double a, double b, double c) nogil:
    cdef double m = a
    if b < m:
        m = b
    if c < m:
        m = c
    return m


cdef double _cost(const double[:] x, const double[:] y, double[:] prev, double[:] curr) nogil:
    cdef Py_ssize_t n = x.shape[0], m = y.shape[0], i, j
    cdef double[:] tmp
    prev[0] = 0.0
    for j in range(1, m + 1):
        prev[j] = INFINITY
    for i in range(1, n + 1):
        curr[0] = INFINITY
        for j in range(1, m + 1):
            curr[j] = fabs(x[i - 1] - y[j - 1]) + _min3(prev[j - 1], prev[j], curr[j - 1])
        tmp = prev
        prev = curr
        curr = tmp
    return prev[m]


def dtw_cost(const double[:] x, const double[:] y):
    cdef Py_ssize_t m = y.shape[0]
    cdef double[:] prev = np.empty(m + 1)
    cdef double[:] curr = np.empty(m + 1)
    cdef double out
    with nogil:
        out = _cost(x, y, prev, curr)
    return out


def dtw_table(const double[:] x, const double[:] y):
    """Full (n+1) x (m+1) cumulative-cost table with infinite borders."""
    cdef Py_ssize_t n = x.shape[0], m = y.shape[0], i, j
    table = np.full((n + 1, m + 1), np.inf)
    cdef double[:, :] t = table
    t[0, 0] = 0.0
    with nogil:
        for i in range(1, n + 1):
            for j in range(1, m + 1):
                t[i, j] = fabs(x[i - 1] - y[j - 1]) + _min3(t[i - 1, j - 1], t[i - 1, j], t[i, j - 1])
    return table


def dtw_pairwise(const double[:, :] X):
    """Symmetric matrix of DTW costs between the rows of ``X``."""
    cdef Py_ssize_t k = X.shape[0], T = X.shape[1], a, b
    out = np.zeros((k, k))
    cdef double[:, :] o = out
    cdef double[:] prev = np.empty(T + 1)
    cdef double[:] curr = np.empty(T + 1)
    cdef double d
    with nogil:
        for a in range(k):
            for b in range(a + 1, k):
                d = _cost(X[a], X[b], prev, curr)
                o[a, b] = d
                o[b, a] = d
    return out
