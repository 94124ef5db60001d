# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels.

The O(n^2 * m) pairwise-distance loops and the Mann-Whitney pair counts
dominate the runtime of every Monte Carlo experiment; this module is the
C counterpart of `_kernels_py` (same contracts, same predicates).
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc, qsort

cnp.import_array()

BACKEND_NAME = "c"


cdef int _cmp_double(const void* pa, const void* pb) noexcept nogil:
    cdef double a = (<const double*> pa)[0]
    cdef double b = (<const double*> pb)[0]
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


cdef inline double _wdist(const double* x, const double* y, const double* w, Py_ssize_t m) noexcept nogil:
    cdef Py_ssize_t t
    cdef double acc = 0.0
    cdef double d
    for t in range(m):
        d = x[t] - y[t]
        acc += w[t] * d * d
    return acc


def sq_l2_matrix(const double[:, ::1] values, const double[::1] weights):
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t m = values.shape[1]
    out_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double d
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                d = _wdist(&values[i, 0], &values[j, 0], &weights[0], m)
                out[i, j] = d
                out[j, i] = d
    return out_arr


def sq_l2_cross(const double[:, ::1] a, const double[:, ::1] b, const double[::1] weights):
    cdef Py_ssize_t na = a.shape[0]
    cdef Py_ssize_t nb = b.shape[0]
    cdef Py_ssize_t m = a.shape[1]
    out_arr = np.empty((na, nb), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(na):
            for j in range(nb):
                out[i, j] = _wdist(&a[i, 0], &b[j, 0], &weights[0], m)
    return out_arr


cdef double _count_below(const double* a, Py_ssize_t na, const double* b, Py_ssize_t nb) noexcept nogil:
    """Pairs (x in a, y in b) with x < y, ties 1/2; both inputs pre-sorted."""
    cdef Py_ssize_t i, lt, le
    cdef double x, total = 0.0
    lt = 0  # count of b <  x
    le = 0  # count of b <= x
    for i in range(na):
        x = a[i]
        while lt < nb and b[lt] < x:
            lt += 1
        if le < lt:
            le = lt
        while le < nb and b[le] <= x:
            le += 1
        total += (nb - le) + 0.5 * (le - lt)
    return total


cdef double _count_below_unsorted(const double* a, Py_ssize_t na, const double* b, Py_ssize_t nb) noexcept nogil:
    cdef double* sa = <double*> malloc(na * sizeof(double))
    cdef double* sb = <double*> malloc(nb * sizeof(double))
    cdef Py_ssize_t i
    cdef double total
    if sa == NULL or sb == NULL:
        if sa != NULL:
            free(sa)
        if sb != NULL:
            free(sb)
        return -1.0
    for i in range(na):
        sa[i] = a[i]
    for i in range(nb):
        sb[i] = b[i]
    qsort(sa, na, sizeof(double), _cmp_double)
    qsort(sb, nb, sizeof(double), _cmp_double)
    total = _count_below(sa, na, sb, nb)
    free(sa)
    free(sb)
    return total


def count_below(a, b):
    cdef cnp.ndarray[double, ndim=1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef double total = _count_below_unsorted(&av[0], av.shape[0], &bv[0], bv.shape[0])
    if total < 0.0:
        raise MemoryError("count_below: allocation failed")
    return total


def count_below_rows(const double[:, ::1] a, const double[:, ::1] b):
    cdef Py_ssize_t r = a.shape[0]
    out_arr = np.empty(r, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int failed = 0
    with nogil:
        for i in range(r):
            out[i] = _count_below_unsorted(&a[i, 0], a.shape[1], &b[i, 0], b.shape[1])
            if out[i] < 0.0:
                failed = 1
                break
    if failed:
        raise MemoryError("count_below_rows: allocation failed")
    return out_arr
