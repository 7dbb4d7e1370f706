import numpy as np
import pytest

from hyperrank import SparseRealMatrix


def test_from_coo_sums_duplicates_and_drops_zeros():
    m = SparseRealMatrix.from_coo(2, 3, [(0, 1, 2.0), (0, 1, 3.0), (1, 0, 4.0),
                                         (1, 2, 1.0), (1, 2, -1.0)])
    assert m.nnz == 2
    assert m.to_dense().tolist() == [[0.0, 5.0, 0.0], [4.0, 0.0, 0.0]]


def test_from_dense_round_trip():
    rng = np.random.default_rng(0)
    dense = rng.random((5, 7))
    dense[dense < 0.5] = 0.0
    m = SparseRealMatrix.from_dense(dense)
    np.testing.assert_array_equal(m.to_dense(), dense)


def test_structural_equality():
    a = SparseRealMatrix.from_coo(2, 2, [(0, 1, 1.0)])
    b = SparseRealMatrix.from_coo(2, 2, [(0, 1, 1.0)])
    c = SparseRealMatrix.from_coo(2, 2, [(1, 0, 1.0)])
    assert a == b
    assert a != c


def test_rejects_out_of_range_entries():
    with pytest.raises(IndexError):
        SparseRealMatrix.from_coo(2, 2, [(0, 5, 1.0)])


def test_rejects_malformed_csr():
    with pytest.raises(ValueError):
        SparseRealMatrix(2, 2, [0, 1], [0], [1.0])  # indptr too short
    with pytest.raises(ValueError):
        SparseRealMatrix(1, 3, [0, 2], [1, 1], [1.0, 2.0])  # duplicate column
    with pytest.raises(ValueError):
        SparseRealMatrix(1, 3, [0, 2], [2, 1], [1.0, 2.0])  # unsorted column
    with pytest.raises(ValueError):
        SparseRealMatrix(1, 3, [0, 1], [1], [0.0])  # stored zero


def test_left_multiply_matches_dense_oracle():
    rng = np.random.default_rng(42)
    for _ in range(25):
        rows, cols = int(rng.integers(1, 12)), int(rng.integers(1, 12))
        dense = rng.random((rows, cols))
        dense[dense < 0.4] = 0.0
        x = rng.random(rows)
        m = SparseRealMatrix.from_dense(dense)
        np.testing.assert_allclose(m.left_multiply(x), x @ dense,
                                   rtol=0, atol=1e-14)


def test_row_sums_and_row_access():
    m = SparseRealMatrix.from_coo(3, 3, [(0, 0, 1.0), (0, 2, 2.0), (2, 1, 5.0)])
    np.testing.assert_array_equal(m.row_sums(), [3.0, 0.0, 5.0])
    cols, vals = m.row(0)
    assert cols.tolist() == [0, 2]
    assert vals.tolist() == [1.0, 2.0]
    cols, vals = m.row(1)
    assert cols.size == 0 and vals.size == 0


def test_arrays_are_frozen():
    m = SparseRealMatrix.from_coo(1, 1, [(0, 0, 1.0)])
    with pytest.raises(ValueError):
        m.data[0] = 2.0
