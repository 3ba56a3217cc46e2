# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sieve kernel. Must mirror `_kernel_py.mark_segment` exactly."""

cimport numpy as cnp


def mark_segment(long long lo, long long hi, cnp.int64_t[::1] base, cnp.uint8_t[::1] flags):
    """Zero `flags[n - lo]` for every n in [lo, hi) composite w.r.t. `base`."""
    cdef long long p, pp, start, j, n = hi - lo
    cdef Py_ssize_t i
    for i in range(base.shape[0]):
        p = base[i]
        pp = p * p
        if pp >= hi:
            break
        if pp >= lo:
            start = pp
        else:
            start = lo + (p - lo % p) % p
        j = start - lo
        while j < n:
            flags[j] = 0
            j += p
