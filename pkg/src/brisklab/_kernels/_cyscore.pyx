# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernels.

Same contract as the numpy backend. The fused paired_win_counts walks each
sample row once and scores all four models in place, which is what the
simulation harness spends its time on.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport pow, log, exp

cnp.import_array()

BACKEND_NAME = "cython"


cdef inline double _linear_row(const double[:, ::1] u, Py_ssize_t k, const double[::1] w) noexcept nogil:
    cdef Py_ssize_t j
    cdef double s = 0.0
    for j in range(u.shape[1]):
        s += w[j] * u[k, j]
    return s


cdef inline double _product_row(const double[:, ::1] u, Py_ssize_t k, const double[::1] w) noexcept nogil:
    # pow(0, w) = 0 for w > 0, so a zero partial value annihilates the row
    cdef Py_ssize_t j
    cdef double s = 1.0
    for j in range(u.shape[1]):
        s *= pow(u[k, j], w[j])
    return s


cdef inline double _multilinear_row(const double[:, ::1] u, Py_ssize_t k,
                                    const double[::1] w, double scale) noexcept nogil:
    # scale = c / (2^n - n - 1); interaction sum = prod(1+u) - 1 - sum(u)
    cdef Py_ssize_t j
    cdef double base = 0.0, tot = 0.0, grow = 1.0
    for j in range(u.shape[1]):
        base += w[j] * u[k, j]
        tot += u[k, j]
        grow *= 1.0 + u[k, j]
    return base + scale * (grow - 1.0 - tot)


cdef inline double _slos_row(const double[:, ::1] u, Py_ssize_t k, const double[::1] w) noexcept nogil:
    # pow(0, -w) = +inf per C99, matching the infinite-loss convention
    cdef Py_ssize_t j
    cdef double s = 0.0
    for j in range(u.shape[1]):
        s += pow(u[k, j], -w[j])
    return s


cdef inline double _ml_scale(Py_ssize_t n, double c) noexcept nogil:
    cdef double terms = pow(2.0, <double> n) - <double> n - 1.0
    return c / terms


def _prep(u):
    u = np.ascontiguousarray(u, dtype=np.float64)
    if u.ndim != 2:
        raise ValueError("expected a (samples, criteria) matrix")
    return u


def _prep_w(w, Py_ssize_t n):
    w = np.ascontiguousarray(w, dtype=np.float64)
    if w.ndim != 1 or w.shape[0] != n:
        raise ValueError("weight vector length must match criterion count")
    return w


def linear_scores(u, w):
    """Weighted arithmetic mean per row: sum_j w_j u_j."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] um = _prep(u)
    cdef cnp.ndarray[double, ndim=1, mode="c"] wm = _prep_w(w, um.shape[1])
    cdef Py_ssize_t m = um.shape[0], k
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef const double[:, ::1] uv = um
    cdef const double[::1] wv = wm
    for k in range(m):
        ov[k] = _linear_row(uv, k, wv)
    return out


def product_scores(u, w):
    """Weighted geometric form per row: prod_j u_j^w_j. Zero input annihilates."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] um = _prep(u)
    cdef cnp.ndarray[double, ndim=1, mode="c"] wm = _prep_w(w, um.shape[1])
    cdef Py_ssize_t m = um.shape[0], k
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef const double[:, ::1] uv = um
    cdef const double[::1] wv = wm
    for k in range(m):
        ov[k] = _product_row(uv, k, wv)
    return out


def multilinear_scores(u, w, double c):
    """Individual terms plus interaction mass c split over all order >= 2 products."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] um = _prep(u)
    cdef cnp.ndarray[double, ndim=1, mode="c"] wm = _prep_w(w, um.shape[1])
    cdef Py_ssize_t m = um.shape[0], k
    cdef double scale = 0.0 if c == 0.0 else _ml_scale(um.shape[1], c)
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef const double[:, ::1] uv = um
    cdef const double[::1] wv = wm
    if c == 0.0:
        for k in range(m):
            ov[k] = _linear_row(uv, k, wv)
    else:
        for k in range(m):
            ov[k] = _multilinear_row(uv, k, wv, scale)
    return out


def slos_scores(u, w):
    """Sum-of-losses per row: sum_j (1/u_j)^w_j. Zero input gives +inf."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] um = _prep(u)
    cdef cnp.ndarray[double, ndim=1, mode="c"] wm = _prep_w(w, um.shape[1])
    cdef Py_ssize_t m = um.shape[0], k
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef const double[:, ::1] uv = um
    cdef const double[::1] wv = wm
    for k in range(m):
        ov[k] = _slos_row(uv, k, wv)
    return out


def count_wins(score_i, score_h, bint smaller_wins):
    """Strict-win counts in both directions; ties (including inf vs inf) count
    for neither."""
    cdef cnp.ndarray[double, ndim=1, mode="c"] a = np.ascontiguousarray(score_i, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1, mode="c"] b = np.ascontiguousarray(score_h, dtype=np.float64)
    if a.shape[0] != b.shape[0]:
        raise ValueError("score arrays must have equal length")
    cdef Py_ssize_t m = a.shape[0], k
    cdef long long wi = 0, wh = 0
    cdef const double[::1] av = a
    cdef const double[::1] bv = b
    if smaller_wins:
        for k in range(m):
            if av[k] < bv[k]:
                wi += 1
            elif bv[k] < av[k]:
                wh += 1
    else:
        for k in range(m):
            if av[k] > bv[k]:
                wi += 1
            elif bv[k] > av[k]:
                wh += 1
    return int(wi), int(wh)


def paired_win_counts(u_i, u_h, w_linear, w_product, w_multilinear, double c, w_slos):
    """Strict-win counts for all four models over one shared pair of sample
    matrices. Returns int64 (4, 2): rows linear/product/multilinear/slos,
    columns (i beats h, h beats i)."""
    cdef cnp.ndarray[double, ndim=2, mode="c"] ui = _prep(u_i)
    cdef cnp.ndarray[double, ndim=2, mode="c"] uh = _prep(u_h)
    if ui.shape[0] != uh.shape[0] or ui.shape[1] != uh.shape[1]:
        raise ValueError("sample matrices must have equal shape")
    cdef Py_ssize_t n = ui.shape[1]
    cdef cnp.ndarray[double, ndim=1, mode="c"] wl = _prep_w(w_linear, n)
    cdef cnp.ndarray[double, ndim=1, mode="c"] wp = _prep_w(w_product, n)
    cdef cnp.ndarray[double, ndim=1, mode="c"] wm = _prep_w(w_multilinear, n)
    cdef cnp.ndarray[double, ndim=1, mode="c"] ws = _prep_w(w_slos, n)

    cdef Py_ssize_t m = ui.shape[0], k
    cdef double scale = 0.0 if c == 0.0 else _ml_scale(n, c)
    cdef double si, sh
    cdef long long[8] acc
    for k in range(8):
        acc[k] = 0

    cdef const double[:, ::1] a = ui
    cdef const double[:, ::1] b = uh
    cdef const double[::1] vl = wl
    cdef const double[::1] vp = wp
    cdef const double[::1] vm = wm
    cdef const double[::1] vs = ws

    with nogil:
        for k in range(m):
            si = _linear_row(a, k, vl)
            sh = _linear_row(b, k, vl)
            if si > sh:
                acc[0] += 1
            elif sh > si:
                acc[1] += 1
            si = _product_row(a, k, vp)
            sh = _product_row(b, k, vp)
            if si > sh:
                acc[2] += 1
            elif sh > si:
                acc[3] += 1
            si = _multilinear_row(a, k, vm, scale)
            sh = _multilinear_row(b, k, vm, scale)
            if si > sh:
                acc[4] += 1
            elif sh > si:
                acc[5] += 1
            si = _slos_row(a, k, vs)
            sh = _slos_row(b, k, vs)
            if si < sh:
                acc[6] += 1
            elif sh < si:
                acc[7] += 1

    out = np.empty((4, 2), dtype=np.int64)
    cdef long long[:, ::1] om = out
    for k in range(4):
        om[k, 0] = acc[2 * k]
        om[k, 1] = acc[2 * k + 1]
    return out
