# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled convolution and moment kernels.

Both routines mirror ``premia._pykernels`` point for point; the test suite
checks the two against each other.
"""
import numpy as np

from libc.math cimport exp, log


cdef void _merge_runs(double* sx, double* sw, double* tx, double* tw,
                     Py_ssize_t lo, Py_ssize_t mid, Py_ssize_t hi) noexcept nogil:
    # stable: on equal keys the left run (lower row index) goes first
    cdef Py_ssize_t i = lo, j = mid, k = lo
    while i < mid and j < hi:
        if sx[j] < sx[i]:
            tx[k] = sx[j]
            tw[k] = sw[j]
            j += 1
        else:
            tx[k] = sx[i]
            tw[k] = sw[i]
            i += 1
        k += 1
    while i < mid:
        tx[k] = sx[i]
        tw[k] = sw[i]
        i += 1
        k += 1
    while j < hi:
        tx[k] = sx[j]
        tw[k] = sw[j]
        j += 1
        k += 1


def convolve_sorted(const double[::1] xa, const double[::1] pa,
                    const double[::1] xb, const double[::1] pb,
                    double merge_tol, Py_ssize_t max_points):
    """Pairwise sums in ascending order, pooled into clusters.

    Each row ``xa[i] + xb[:]`` is already sorted (fl(a + b) is monotone), so
    a bottom-up stable merge of the n rows reproduces a stable sort of the
    flattened outer sum. Sums within ``merge_tol`` of a cluster's first point
    join that cluster.

    Returns ``(support, masses)`` or ``None`` if more than ``max_points``
    clusters would be produced.
    """
    cdef Py_ssize_t n = xa.shape[0], m = xb.shape[0]
    cdef Py_ssize_t total = n * m
    bx = np.empty(total, dtype=np.float64)
    bw = np.empty(total, dtype=np.float64)
    cx = np.empty(total, dtype=np.float64)
    cw = np.empty(total, dtype=np.float64)
    cdef double[::1] vbx = bx, vbw = bw, vcx = cx, vcw = cw
    cdef double* sx = &vbx[0]
    cdef double* sw = &vbw[0]
    cdef double* tx = &vcx[0]
    cdef double* tw = &vcw[0]
    cdef double* tmp
    cdef Py_ssize_t i, j, run, lo, mid, hi, k = -1
    cdef double anchor = 0.0
    cdef bint overflow = False
    with nogil:
        for i in range(n):
            for j in range(m):
                sx[i * m + j] = xa[i] + xb[j]
                sw[i * m + j] = pa[i] * pb[j]
        run = m
        while run < total:
            lo = 0
            while lo < total:
                mid = lo + run if lo + run < total else total
                hi = lo + 2 * run if lo + 2 * run < total else total
                _merge_runs(sx, sw, tx, tw, lo, mid, hi)
                lo = hi
            tmp = sx; sx = tx; tx = tmp
            tmp = sw; sw = tw; tw = tmp
            run *= 2
        # pool clusters in place; k trails the read position
        for i in range(total):
            if k < 0 or sx[i] - anchor > merge_tol:
                k += 1
                if k > max_points - 1:
                    overflow = True
                    break
                anchor = sx[i]
                sx[k] = sx[i]
                sw[k] = sw[i]
            else:
                sw[k] += sw[i]
    if overflow:
        return None
    out_x = np.empty(k + 1, dtype=np.float64)
    out_p = np.empty(k + 1, dtype=np.float64)
    cdef double[::1] ox = out_x, op = out_p
    for i in range(k + 1):
        ox[i] = sx[i]
        op[i] = sw[i]
    return out_x, out_p


def log_moment_shifted(const double[::1] x, const double[::1] p, double theta, double shift):
    """log sum_i p_i exp(theta * (x_i - shift)), skipping zero-mass points."""
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s = 0.0
    with nogil:
        for i in range(n):
            if p[i] > 0.0:
                s += p[i] * exp(theta * (x[i] - shift))
    return log(s)
