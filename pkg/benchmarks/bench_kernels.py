"""Benchmark the compiled kernels against the pure-Python fallback.

Builds a synthetic positive-degree-core hypergraph, then times the two hot
loops (CSR transposed multiply used by power iteration, and the Monte Carlo
walk stepper) on both backends, verifying that outputs are identical.

    python benchmarks/bench_kernels.py [--vertices N] [--arcs M]
                                       [--steps N] [--reps N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hyperrank import DirectedHypergraph, HyperArc, build_transition
from hyperrank._kernels import _pykernels
from hyperrank.walk import _walk_tables

try:
    from hyperrank._kernels import _ckernels
except ImportError:
    _ckernels = None


def synthetic_core(rng, n_vertices: int, n_arcs: int) -> DirectedHypergraph:
    """A full cycle (keeps every degree positive) plus random hyper-arcs."""
    arcs = [HyperArc(f"c{i}", (i,), ((i + 1) % n_vertices,),
                     float(rng.uniform(0.5, 5.0)))
            for i in range(n_vertices)]
    for j in range(n_arcs - n_vertices):
        ts = int(rng.integers(1, 4))
        tail = rng.choice(n_vertices, size=ts, replace=False)
        rest = np.setdiff1d(np.arange(n_vertices), tail)
        head = rng.choice(rest, size=int(rng.integers(1, 4)), replace=False)
        arcs.append(HyperArc(f"x{j}",
                             tuple(int(t) for t in tail),
                             tuple(int(h) for h in head),
                             float(rng.uniform(0.5, 5.0))))
    return DirectedHypergraph(tuple(f"v{i}" for i in range(n_vertices)),
                              tuple(arcs))


def bench_spmv(kernel, matrix, x, reps: int):
    out = np.zeros(matrix.cols)
    start = time.perf_counter()
    for _ in range(reps):
        kernel.csr_left_multiply(matrix.indptr, matrix.indices, matrix.data,
                                 x, out)
    return time.perf_counter() - start, out.copy()


def bench_walk(kernel, tables, n_vertices: int, draws):
    counts = np.zeros(n_vertices, dtype=np.int64)
    start = time.perf_counter()
    final = kernel.walk_steps(tables.arc_ptr, tables.arc_cum,
                              tables.arc_of_slot, tables.head_ptr,
                              tables.head_verts, 0, draws[0], draws[1], counts)
    return time.perf_counter() - start, counts, final


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--vertices", type=int, default=2000)
    parser.add_argument("--arcs", type=int, default=6000)
    parser.add_argument("--steps", type=int, default=1_000_000)
    parser.add_argument("--reps", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    hg = synthetic_core(rng, args.vertices, args.arcs)
    P = build_transition(hg)
    tables = _walk_tables(hg)
    x = rng.random(args.vertices)
    x /= x.sum()
    draws = rng.random((2, args.steps))

    print(f"network: {hg.n_vertices} vertices, {hg.n_arcs} arcs, "
          f"P nnz {P.matrix.nnz}")
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled kernels unavailable; benchmarking the fallback only")

    spmv, walk = {}, {}
    for name, kernel in backends:
        t, out = bench_spmv(kernel, P.matrix, x, args.reps)
        spmv[name] = (t, out)
        print(f"spmv  {name:<7} {t:8.3f} s   "
              f"({t / args.reps * 1e6:9.1f} us/multiply)")
    for name, kernel in backends:
        t, counts, final = bench_walk(kernel, tables, hg.n_vertices, draws)
        walk[name] = (t, counts, final)
        print(f"walk  {name:<7} {t:8.3f} s   "
              f"({t / args.steps * 1e9:9.1f} ns/step)")

    if _ckernels is not None:
        same_spmv = np.array_equal(spmv["python"][1], spmv["cython"][1])
        same_walk = (np.array_equal(walk["python"][1], walk["cython"][1])
                     and walk["python"][2] == walk["cython"][2])
        print(f"identical results: spmv={same_spmv} walk={same_walk}")
        print(f"speedup: spmv {spmv['python'][0] / spmv['cython'][0]:.1f}x, "
              f"walk {walk['python'][0] / walk['cython'][0]:.1f}x")
        if not (same_spmv and same_walk):
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
