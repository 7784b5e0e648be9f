# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""
import math

import numpy as np

from cython.parallel cimport prange
from libc.math cimport sqrt, log, exp, frexp, INFINITY

BACKEND = "cython"

cdef double NODE_HIT = 1e-300
cdef double LN2 = 0.6931471805599453


cdef inline void _lebesgue_point(const double[::1] nre, const double[::1] nim, bint cplx,
                                 const double[::1] cw, double shift,
                                 double px, double py,
                                 double* lam, double* lam2) noexcept nogil:
    cdef Py_ssize_t j, k = nre.shape[0]
    cdef double m = 1.0, s1 = 0.0, s2 = 0.0, dx, dy, d2, d, t
    cdef int e = 0, ee
    for j in range(k):
        dx = px - nre[j]
        d2 = dx * dx
        if cplx:
            dy = py - nim[j]
            d2 = d2 + dy * dy
        if d2 < NODE_HIT:
            lam[0] = 1.0
            lam2[0] = 1.0
            return
        d = sqrt(d2)
        m = m * d
        t = cw[j] / d
        s1 = s1 + t
        s2 = s2 + t * t
        if (j & 15) == 15:
            m = frexp(m, &ee)
            e = e + ee
    m = frexp(m, &ee)
    e = e + ee
    t = exp(log(m) + e * LN2 + shift)
    lam[0] = t * s1
    lam2[0] = t * sqrt(s2)


cdef inline double _logabs_point(const double[::1] nre, const double[::1] nim, bint cplx,
                                 double px, double py) noexcept nogil:
    cdef Py_ssize_t j, k = nre.shape[0]
    cdef double m = 1.0, dx, dy, d2
    cdef int e = 0, ee
    for j in range(k):
        dx = px - nre[j]
        d2 = dx * dx
        if cplx:
            dy = py - nim[j]
            d2 = d2 + dy * dy
        if d2 == 0.0:
            return -INFINITY
        m = m * sqrt(d2)
        if (j & 15) == 15:
            m = frexp(m, &ee)
            e = e + ee
    m = frexp(m, &ee)
    e = e + ee
    return log(m) + e * LN2


def _split(points):
    points = np.asarray(points)
    if np.iscomplexobj(points):
        return (np.ascontiguousarray(points.real, dtype=float),
                np.ascontiguousarray(points.imag, dtype=float), True)
    re = np.ascontiguousarray(points, dtype=float)
    return re, np.zeros_like(re), False


def log_weights(nodes, int nthreads=1):
    cdef double[::1] nre, nim
    nre, nim, cplx_ = _split(nodes)
    cdef bint cplx = cplx_
    cdef Py_ssize_t k = nre.shape[0], i, j
    out_arr = np.empty(k)
    cdef double[::1] out = out_arr
    cdef double acc, dx, dy, d2
    for i in prange(k, nogil=True, num_threads=nthreads, schedule="static"):
        acc = 0.0
        for j in range(k):
            if j != i:
                dx = nre[i] - nre[j]
                d2 = dx * dx
                if cplx:
                    dy = nim[i] - nim[j]
                    d2 = d2 + dy * dy
                acc = acc + 0.5 * log(d2)
        out[i] = acc
    return out_arr


def lebesgue_eval(nodes, logd, points, int nthreads=1):
    cdef double[::1] nre, nim, pre, pim
    nre, nim, ncplx = _split(nodes)
    pre, pim, pcplx = _split(points)
    cdef bint cplx = ncplx or pcplx
    logd_arr = np.asarray(logd, dtype=float)
    cdef double shift = float(np.max(-logd_arr))
    cdef double[::1] cw = np.ascontiguousarray(np.exp(-logd_arr - shift))
    cdef Py_ssize_t n = pre.shape[0], i
    lam_arr = np.empty(n)
    lam2_arr = np.empty(n)
    cdef double[::1] lam = lam_arr
    cdef double[::1] lam2 = lam2_arr
    for i in prange(n, nogil=True, num_threads=nthreads, schedule="static"):
        _lebesgue_point(nre, nim, cplx, cw, shift, pre[i], pim[i], &lam[i], &lam2[i])
    return lam_arr, lam2_arr


def logabs_w(nodes, points, int nthreads=1):
    cdef double[::1] nre, nim, pre, pim
    nre, nim, ncplx = _split(nodes)
    pre, pim, pcplx = _split(points)
    cdef bint cplx = ncplx or pcplx
    cdef Py_ssize_t n = pre.shape[0], i
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    for i in prange(n, nogil=True, num_threads=nthreads, schedule="static"):
        out[i] = _logabs_point(nre, nim, cplx, pre[i], pim[i])
    return out_arr


def next_point_profile(nodes, int kmax):
    cdef double[::1] nre, nim
    nre, nim, cplx_ = _split(nodes)
    cdef bint cplx = cplx_
    if nre.shape[0] < kmax + 1:
        raise ValueError("need kmax + 1 nodes")
    lam_arr = np.full(kmax + 1, np.nan)
    lam2_arr = np.full(kmax + 1, np.nan)
    logw_arr = np.full(kmax + 1, np.nan)
    cdef double[::1] lam = lam_arr
    cdef double[::1] lam2 = lam2_arr
    cdef double[::1] logw_out = logw_arr
    cdef double[::1] logd = np.zeros(kmax + 1)
    cdef double[::1] comp = np.zeros(kmax + 1)
    ld_arr = np.empty(kmax + 1)
    cdef double[::1] ld = ld_arr
    cdef Py_ssize_t k, j
    cdef double dx, dy, d2, logw, s1, s2, t, y, s
    for k in range(1, kmax + 1):
        for j in range(k):
            dx = nre[k] - nre[j]
            d2 = dx * dx
            if cplx:
                dy = nim[k] - nim[j]
                d2 = d2 + dy * dy
            ld[j] = 0.5 * log(d2)
        logw = math.fsum(ld_arr[:k])
        s1 = 0.0
        s2 = 0.0
        for j in range(k):
            t = exp(logw - ld[j] - logd[j])
            s1 = s1 + t
            s2 = s2 + t * t
        lam[k] = s1
        lam2[k] = sqrt(s2)
        logw_out[k] = logw
        for j in range(k):
            y = ld[j] - comp[j]
            s = logd[j] + y
            comp[j] = (s - logd[j]) - y
            logd[j] = s
        logd[k] = logw
    return lam_arr, lam2_arr, logw_arr
