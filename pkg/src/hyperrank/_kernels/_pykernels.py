"""Pure NumPy/stdlib fallback for the compiled kernels.

The two backends must stay bitwise-compatible: same accumulation order in
the scatter multiply, same bisection bounds and float truncation in the
walk stepper. Parity is enforced by tests/test_kernels.py.
"""

from __future__ import annotations

from bisect import bisect_right

import numpy as np


def csr_left_multiply(indptr, indices, data, x, out):
    """Write y = xᵀA into ``out`` for a CSR matrix A, i.e. a row-major scatter."""
    out[:] = 0.0
    # ufunc.at applies its updates sequentially in element order, which is
    # exactly the compiled row-major loop.
    np.add.at(out, indices, data * np.repeat(x, np.diff(indptr)))


def walk_steps(arc_ptr, arc_cum, arc_of_slot, head_ptr, head_verts,
               start, r_arc, r_head, counts):
    """Advance the walk by len(r_arc) transitions; returns the final vertex.

    ``counts`` accumulates one visit per transition, in place. The caller
    supplies the uniform draws so that chunked calls are reproducible.
    """
    ptr = arc_ptr.tolist()
    cum = arc_cum.tolist()
    arc_of = arc_of_slot.tolist()
    hptr = head_ptr.tolist()
    hv = head_verts.tolist()
    ra = r_arc.tolist()
    rh = r_head.tolist()
    cnt = counts.tolist()
    u = int(start)
    for t in range(len(ra)):
        lo = ptr[u]
        hi = ptr[u + 1]
        slot = bisect_right(cum, ra[t], lo, hi)
        if slot >= hi:
            slot = hi - 1
        e = arc_of[slot]
        hs = hptr[e]
        hn = hptr[e + 1] - hs
        idx = int(rh[t] * hn)
        if idx >= hn:
            idx = hn - 1
        u = hv[hs + idx]
        cnt[u] += 1
    counts[:] = cnt
    return u
