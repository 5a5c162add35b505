# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot numerical kernels.

Mirrors ``citefit._kernels_py`` exactly; see that module for the contract.
"""

from libc.math cimport erfc, exp, log

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

cdef double INV_SQRT2 = 0.7071067811865475244


def scaled_power_sum(double alpha, double b, long start, long stop):
    """Sum of ((b + x) / (b + 1))**(-alpha) for integer x in [start, stop]."""
    cdef double log_base = log(b + 1.0)
    cdef double total = 0.0
    cdef double comp = 0.0   # Kahan compensation
    cdef double term, y, t
    cdef long x
    for x in range(start, stop + 1):
        term = exp(-alpha * (log(b + x) - log_base))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def normal_interval_masses(object z_lo, object z_hi):
    """Phi(z_hi) - Phi(z_lo) for standard-normal Phi, elementwise."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lo = np.ascontiguousarray(z_lo, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hi = np.ascontiguousarray(z_hi, dtype=np.float64)
    if lo.shape[0] != hi.shape[0]:
        raise ValueError("z_lo and z_hi must have equal length")
    cdef Py_ssize_t n = lo.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i
    cdef double a, c, m
    for i in range(n):
        if lo[i] + hi[i] > 0.0:
            a = lo[i]
            c = hi[i]
        else:
            a = -hi[i]
            c = -lo[i]
        m = 0.5 * (erfc(a * INV_SQRT2) - erfc(c * INV_SQRT2))
        out[i] = m if m > 0.0 else 0.0
    return out
