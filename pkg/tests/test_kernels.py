"""Backend parity: the compiled and pure-Python kernels must agree bitwise."""

import os
import subprocess
import sys

import numpy as np
import pytest

import hyperrank
from hyperrank._kernels import _pykernels
from hyperrank.walk import _walk_tables

from randgen import random_pruned_hypergraph

_ckernels = pytest.importorskip(
    "hyperrank._kernels._ckernels",
    reason="compiled kernels unavailable; install built the pure fallback")


def _random_csr_arrays(rng, rows, cols, density=0.4):
    dense = rng.random((rows, cols))
    dense[dense > density] = 0.0
    indptr = [0]
    indices = []
    data = []
    for i in range(rows):
        js = np.flatnonzero(dense[i])
        indices.extend(int(j) for j in js)
        data.extend(float(x) for x in dense[i, js])
        indptr.append(len(indices))
    return (np.array(indptr, dtype=np.int64), np.array(indices, dtype=np.int64),
            np.array(data), dense)


def test_csr_left_multiply_parity():
    rng = np.random.default_rng(61)
    for _ in range(30):
        rows = int(rng.integers(1, 40))
        cols = int(rng.integers(1, 40))
        indptr, indices, data, dense = _random_csr_arrays(rng, rows, cols)
        x = rng.random(rows)
        out_c = np.zeros(cols)
        out_py = np.zeros(cols)
        _ckernels.csr_left_multiply(indptr, indices, data, x, out_c)
        _pykernels.csr_left_multiply(indptr, indices, data, x, out_py)
        np.testing.assert_array_equal(out_c, out_py)
        np.testing.assert_allclose(out_c, x @ dense, rtol=0, atol=1e-13)


def test_walk_steps_parity():
    rng = np.random.default_rng(67)
    for _ in range(10):
        hg = random_pruned_hypergraph(rng, max_vertices=12, max_arcs=25)
        tables = _walk_tables(hg)
        draws = rng.random((2, 5000))
        counts_c = np.zeros(hg.n_vertices, dtype=np.int64)
        counts_py = np.zeros(hg.n_vertices, dtype=np.int64)
        final_c = _ckernels.walk_steps(tables.arc_ptr, tables.arc_cum,
                                       tables.arc_of_slot, tables.head_ptr,
                                       tables.head_verts, 0, draws[0], draws[1],
                                       counts_c)
        final_py = _pykernels.walk_steps(tables.arc_ptr, tables.arc_cum,
                                         tables.arc_of_slot, tables.head_ptr,
                                         tables.head_verts, 0, draws[0], draws[1],
                                         counts_py)
        assert final_c == final_py
        np.testing.assert_array_equal(counts_c, counts_py)
        assert counts_c.sum() == 5000


def test_walk_steps_handles_boundary_draws():
    # draws of exactly 0.0 and values just below 1.0 must stay in range
    hg = random_pruned_hypergraph(np.random.default_rng(71), max_vertices=6,
                                  max_arcs=10)
    tables = _walk_tables(hg)
    edge = np.full(64, np.nextafter(1.0, 0.0))
    zero = np.zeros(64)
    for r_arc, r_head in ((edge, edge), (zero, zero), (edge, zero), (zero, edge)):
        counts_c = np.zeros(hg.n_vertices, dtype=np.int64)
        counts_py = np.zeros(hg.n_vertices, dtype=np.int64)
        fc = _ckernels.walk_steps(tables.arc_ptr, tables.arc_cum,
                                  tables.arc_of_slot, tables.head_ptr,
                                  tables.head_verts, 0, r_arc, r_head, counts_c)
        fp = _pykernels.walk_steps(tables.arc_ptr, tables.arc_cum,
                                   tables.arc_of_slot, tables.head_ptr,
                                   tables.head_verts, 0, r_arc, r_head, counts_py)
        assert fc == fp
        np.testing.assert_array_equal(counts_c, counts_py)


def test_default_backend_is_compiled_here():
    assert hyperrank.KERNEL_BACKEND == "cython"


def test_env_var_forces_pure_python_backend():
    env = dict(os.environ, HYPERRANK_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import hyperrank; print(hyperrank.KERNEL_BACKEND)"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


def test_simulation_identical_across_backends(hg3):
    code = (
        "import hyperrank, json;"
        "hg = hyperrank.DirectedHypergraph.from_named_arcs("
        "[('e1', ['v1'], ['v2', 'v3'], 1.0), ('e2', ['v2'], ['v3'], 2.0),"
        " ('e3', ['v3'], ['v1'], 1.0)]);"
        "print(json.dumps(hyperrank.simulate_walk(hg, 'v1', 50000, seed=3)))"
    )
    runs = {}
    for label, force in (("cython", "0"), ("python", "1")):
        env = dict(os.environ, HYPERRANK_PURE_PYTHON=force)
        out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                             text=True, env=env, check=True)
        runs[label] = out.stdout
    assert runs["cython"] == runs["python"]
