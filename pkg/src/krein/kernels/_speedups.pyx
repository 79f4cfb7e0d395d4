# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twins of the hot kernels.

The RNG word stream is always generated here when this module is importable
(a C loop beats vectorized numpy by an order of magnitude). The matrix
kernels use tight loops only below a work cutoff; past it BLAS wins, so they
delegate to the pure backend.
"""

import numpy as np

from . import _pure

# Two-stage loop work (n*n*m + n*m*m complex fmas) below which loops beat
# BLAS dispatch overhead; measured crossover sits near n = m = 8.
cdef Py_ssize_t SMALL_WORK = 2500


def splitmix64_words(seed, start, count):
    """Words ``start .. start+count-1`` of the splitmix64 stream for ``seed``.

    Same stream as the pure backend, computed in a single C loop.
    """
    cdef unsigned long long s = seed & 0xFFFFFFFFFFFFFFFFULL
    cdef unsigned long long s0 = start & 0xFFFFFFFFFFFFFFFFULL
    cdef Py_ssize_t n = count
    out = np.empty(n, dtype=np.uint64)
    cdef unsigned long long[::1] o = out
    cdef unsigned long long z
    cdef Py_ssize_t i
    for i in range(n):
        z = s + (s0 + i + 1) * 0x9E3779B97F4A7C15ULL
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
        o[i] = z ^ (z >> 31)
    return out


def pairwise_form(f, g, other=None):
    """Matrix of indefinite products between two vector families.

    Entry ``(i, j)`` is the product of column ``i`` of ``f`` against column
    ``j`` of ``other`` (default ``f``), linear in the first slot and
    conjugate-linear in the second, weighted by the metric matrix ``g``.
    """
    if other is None:
        other = f
    cdef Py_ssize_t n = f.shape[0], m1 = f.shape[1], m2 = other.shape[1]
    if (
        n * n * m1 + n * m1 * m2 > SMALL_WORK
        or f.dtype != np.complex128
        or g.dtype != np.complex128
        or other.dtype != np.complex128
    ):
        return _pure.pairwise_form(f, g, other)
    cdef const double complex[:, :] fv = f
    cdef const double complex[:, :] gv = g
    cdef const double complex[:, :] ov = other
    gf_arr = np.empty((n, m1), dtype=np.complex128)
    out = np.empty((m1, m2), dtype=np.complex128)
    cdef double complex[:, ::1] gf = gf_arr
    cdef double complex[:, ::1] o = out
    cdef double complex acc
    cdef Py_ssize_t i, j, a, b
    for a in range(n):
        for i in range(m1):
            acc = 0
            for b in range(n):
                acc = acc + gv[a, b] * fv[b, i]
            gf[a, i] = acc
    for i in range(m1):
        for j in range(m2):
            acc = 0
            for a in range(n):
                acc = acc + ov[a, j].conjugate() * gf[a, i]
            o[i, j] = acc
    return out


def batch_analysis(f, g, x):
    """Coefficient matrix ``a[r, s]`` = product of sample ``x[:, s]`` against
    family vector ``f[:, r]`` under the metric ``g``."""
    cdef Py_ssize_t n = f.shape[0], m = f.shape[1], k = x.shape[1]
    if (
        n * n * k + n * m * k > SMALL_WORK
        or f.dtype != np.complex128
        or g.dtype != np.complex128
        or x.dtype != np.complex128
    ):
        return _pure.batch_analysis(f, g, x)
    cdef const double complex[:, :] fv = f
    cdef const double complex[:, :] gv = g
    cdef const double complex[:, :] xv = x
    gx_arr = np.empty((n, k), dtype=np.complex128)
    out = np.empty((m, k), dtype=np.complex128)
    cdef double complex[:, ::1] gx = gx_arr
    cdef double complex[:, ::1] o = out
    cdef double complex acc
    cdef Py_ssize_t r, s, a, b
    for a in range(n):
        for s in range(k):
            acc = 0
            for b in range(n):
                acc = acc + gv[a, b] * xv[b, s]
            gx[a, s] = acc
    for r in range(m):
        for s in range(k):
            acc = 0
            for a in range(n):
                acc = acc + fv[a, r].conjugate() * gx[a, s]
            o[r, s] = acc
    return out
