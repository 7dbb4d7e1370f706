"""Row-compressed sparse real matrices.

Deliberately small: only the shapes and products the hypergraph pipeline
needs (incidence matrices, the transition matrix), with a kernel-backed
transposed vector product. Arrays are frozen after construction.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import _kernels


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True, order="C")
    arr.setflags(write=False)
    return arr


class SparseRealMatrix:
    """CSR matrix with sorted, duplicate-free columns and no stored zeros."""

    __slots__ = ("rows", "cols", "indptr", "indices", "data")

    def __init__(self, rows: int, cols: int, indptr, indices, data):
        self.rows = int(rows)
        self.cols = int(cols)
        self.indptr = _frozen(indptr, np.int64)
        self.indices = _frozen(indices, np.int64)
        self.data = _frozen(data, np.float64)
        self._check()

    def _check(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if self.indptr.shape != (self.rows + 1,):
            raise ValueError("indptr length must be rows + 1")
        if self.indices.shape != self.data.shape or self.indices.ndim != 1:
            raise ValueError("indices and data must be aligned 1-d arrays")
        if self.indptr[0] != 0 or self.indptr[-1] != self.indices.size:
            raise ValueError("indptr must span the entry arrays")
        if np.any(np.diff(self.indptr) < 0):
            raise ValueError("indptr must be nondecreasing")
        if self.indices.size:
            if self.indices.min() < 0 or self.indices.max() >= self.cols:
                raise ValueError("column index out of range")
            if np.any(self.data == 0.0):
                raise ValueError("explicit zeros are not stored")
        if self.indices.size > 1:
            newrow = np.zeros(self.indices.size, dtype=bool)
            starts = self.indptr[1:-1]
            newrow[starts[starts < self.indices.size]] = True
            if np.any(~newrow[1:] & (np.diff(self.indices) <= 0)):
                raise ValueError("columns must be strictly increasing within a row")

    @classmethod
    def from_coo(cls, rows: int, cols: int,
                 entries: Iterable[tuple[int, int, float]]) -> "SparseRealMatrix":
        """Build from (row, col, value) triples; duplicates sum, zeros drop."""
        acc: dict[tuple[int, int], float] = {}
        for i, j, v in entries:
            i = int(i)
            j = int(j)
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            key = (i, j)
            acc[key] = acc.get(key, 0.0) + float(v)
        kept = sorted((ij, v) for ij, v in acc.items() if v != 0.0)
        indptr = np.zeros(rows + 1, dtype=np.int64)
        indices = np.empty(len(kept), dtype=np.int64)
        data = np.empty(len(kept), dtype=np.float64)
        for k, ((i, j), v) in enumerate(kept):
            indptr[i + 1] += 1
            indices[k] = j
            data[k] = v
        np.cumsum(indptr, out=indptr)
        return cls(rows, cols, indptr, indices, data)

    @classmethod
    def from_dense(cls, dense) -> "SparseRealMatrix":
        dense = np.asarray(dense, dtype=np.float64)
        if dense.ndim != 2:
            raise ValueError("expected a 2-d array")
        rows, cols = dense.shape
        ii, jj = np.nonzero(dense)
        return cls.from_coo(rows, cols, zip(ii, jj, dense[ii, jj]))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols))
        for i in range(self.rows):
            a, b = self.indptr[i], self.indptr[i + 1]
            out[i, self.indices[a:b]] = self.data[a:b]
        return out

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """The (column indices, values) slices of row i."""
        a, b = self.indptr[i], self.indptr[i + 1]
        return self.indices[a:b], self.data[a:b]

    def row_sums(self) -> np.ndarray:
        out = np.zeros(self.rows)
        np.add.at(out, np.repeat(np.arange(self.rows), np.diff(self.indptr)), self.data)
        return out

    def left_multiply(self, x, out: np.ndarray | None = None) -> np.ndarray:
        """Return y = xᵀA as a 1-d array of length ``cols``."""
        x = np.ascontiguousarray(x, dtype=np.float64)
        if x.shape != (self.rows,):
            raise ValueError(f"expected a vector of length {self.rows}")
        if out is None:
            out = np.zeros(self.cols)
        elif out.shape != (self.cols,) or out.dtype != np.float64:
            raise ValueError(f"out must be a float64 vector of length {self.cols}")
        _kernels.csr_left_multiply(self.indptr, self.indices, self.data, x, out)
        return out

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRealMatrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.data, other.data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"SparseRealMatrix({self.rows}x{self.cols}, nnz={self.nnz})"
