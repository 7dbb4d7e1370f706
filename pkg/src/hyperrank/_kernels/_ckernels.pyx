# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: CSR left-multiply (scatter) and random-walk stepping.

Bitwise-compatible with _pykernels by construction: identical accumulation
order, bisection bounds, and float truncation.
"""

from libc.stdint cimport int64_t


def csr_left_multiply(const int64_t[::1] indptr, const int64_t[::1] indices,
                      const double[::1] data, const double[::1] x,
                      double[::1] out):
    """Write y = xT A into ``out`` for a CSR matrix A."""
    cdef Py_ssize_t n_rows = indptr.shape[0] - 1
    cdef Py_ssize_t i, j
    cdef double xi
    out[:] = 0.0
    with nogil:
        for i in range(n_rows):
            xi = x[i]
            for j in range(indptr[i], indptr[i + 1]):
                out[indices[j]] += data[j] * xi


def walk_steps(const int64_t[::1] arc_ptr, const double[::1] arc_cum,
               const int64_t[::1] arc_of_slot, const int64_t[::1] head_ptr,
               const int64_t[::1] head_verts, Py_ssize_t start,
               const double[::1] r_arc, const double[::1] r_head,
               int64_t[::1] counts):
    """Advance the walk by len(r_arc) transitions; returns the final vertex."""
    cdef Py_ssize_t n_steps = r_arc.shape[0]
    cdef Py_ssize_t t, lo, hi, mid, slot, hs, hn, idx
    cdef Py_ssize_t u = start
    cdef int64_t e
    cdef double r
    with nogil:
        for t in range(n_steps):
            lo = arc_ptr[u]
            hi = arc_ptr[u + 1]
            r = r_arc[t]
            # bisect_right(arc_cum, r, lo, hi)
            while lo < hi:
                mid = (lo + hi) >> 1
                if r < arc_cum[mid]:
                    hi = mid
                else:
                    lo = mid + 1
            slot = lo
            if slot >= arc_ptr[u + 1]:
                slot = arc_ptr[u + 1] - 1
            e = arc_of_slot[slot]
            hs = head_ptr[e]
            hn = head_ptr[e + 1] - hs
            idx = <Py_ssize_t>(r_head[t] * hn)
            if idx >= hn:
                idx = hn - 1
            u = head_verts[hs + idx]
            counts[u] += 1
    return u
