# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled lane for the hot numeric kernels.

Single-pass fused loops over the row dimension; avoids the temporaries the
numpy lane allocates.  Semantics match semprobe.kernels.pure to float64
rounding.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, log, sqrt

cnp.import_array()

LANE = "c"


def softmax_xent(logits, labels, bint want_grad=True):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] lg = np.ascontiguousarray(logits, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] lb = np.ascontiguousarray(labels, dtype=np.int64)
    cdef Py_ssize_t n = lg.shape[0]
    cdef Py_ssize_t c = lg.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] grad = None
    if want_grad:
        grad = np.empty((n, c), dtype=np.float64)
    cdef double loss = 0.0
    cdef double row_max, denom, p
    cdef Py_ssize_t i, j
    cdef double inv_n = 1.0 / n
    for i in range(n):
        row_max = lg[i, 0]
        for j in range(1, c):
            if lg[i, j] > row_max:
                row_max = lg[i, j]
        denom = 0.0
        for j in range(c):
            denom += exp(lg[i, j] - row_max)
        loss -= (lg[i, lb[i]] - row_max - log(denom)) * inv_n
        if want_grad:
            for j in range(c):
                p = exp(lg[i, j] - row_max) / denom
                if j == lb[i]:
                    p -= 1.0
                grad[i, j] = p * inv_n
    if want_grad:
        return loss, np.asarray(grad)
    return loss, None


def cosine_many(a, b):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0]
    cdef Py_ssize_t d = av.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double dot, na, nb, denom, val
    cdef Py_ssize_t i, j
    for i in range(n):
        dot = 0.0
        na = 0.0
        nb = 0.0
        for j in range(d):
            dot += av[i, j] * bv[i, j]
            na += av[i, j] * av[i, j]
            nb += bv[i, j] * bv[i, j]
        # sqrt(na)*sqrt(nb): sqrt(na*nb) can underflow for tiny vectors
        denom = sqrt(na) * sqrt(nb)
        if denom == 0.0:
            out[i] = float("nan")
            continue
        val = dot / denom
        if val > 1.0:
            val = 1.0
        elif val < -1.0:
            val = -1.0
        out[i] = val
    return np.asarray(out)


def count_exceeding(values, grid):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals = np.sort(np.asarray(values, dtype=np.float64))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] g = np.ascontiguousarray(grid, dtype=np.float64)
    cdef Py_ssize_t m = vals.shape[0]
    cdef Py_ssize_t k = g.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(k, dtype=np.int64)
    cdef Py_ssize_t i, lo, hi, mid
    for i in range(k):
        lo = 0
        hi = m
        while lo < hi:
            mid = (lo + hi) // 2
            if vals[mid] <= g[i]:
                lo = mid + 1
            else:
                hi = mid
        out[i] = m - lo
    return np.asarray(out)
