import numpy as np
import pytest

from biquad import catalog
from biquad.errors import DimensionMismatchError, IndexOutOfRangeError, NonFiniteEntryError
from biquad.tensor import (
    SymmetryClass,
    classify_symmetry,
    entry,
    identity_tensor,
    is_nonnegative,
    new_dense,
    slice_x,
    slice_y,
    zero_tensor,
)


def test_zero_tensor_entries():
    T = new_dense(2, 2, np.zeros(16))
    assert all(v == 0 for v in T.entries)
    assert entry(T, 1, 1, 1, 1) == 0


def test_flat_layout_is_row_major():
    m, n = 2, 3
    T = new_dense(m, n, np.arange(m * m * n * n))
    for i1, j1, i2, j2 in np.ndindex(m, n, m, n):
        assert entry(T, i1, j1, i2, j2) == ((i1 * n + j1) * m + i2) * n + j2


def test_wrong_length_rejected():
    with pytest.raises(DimensionMismatchError):
        new_dense(2, 3, np.zeros(25))


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_non_finite_rejected(bad):
    e = np.zeros(16)
    e[5] = bad
    with pytest.raises(NonFiniteEntryError):
        new_dense(2, 2, e)


def test_small_dims_rejected():
    with pytest.raises(DimensionMismatchError):
        new_dense(1, 2, np.zeros(4))


def test_tensor_is_read_only(multi_mplus):
    with pytest.raises(ValueError):
        multi_mplus.data[0, 0, 0, 0] = 1.0


def test_no_symmetrization_on_construction():
    e = np.zeros(16)
    e[1] = 3.0
    T = new_dense(2, 2, e)
    assert entry(T, 0, 0, 0, 1) == 3.0 and entry(T, 0, 1, 0, 0) == 0.0


def test_catalog_entries(multi_mplus, mixed_sign):
    assert entry(multi_mplus, 0, 0, 0, 0) == 4
    assert entry(mixed_sign, 0, 0, 0, 0) == 1
    assert entry(mixed_sign, 1, 0, 1, 0) == 2


def test_entry_out_of_range(multi_mplus):
    with pytest.raises(IndexOutOfRangeError):
        entry(multi_mplus, 2, 0, 0, 0)


def test_symmetry_classes(multi_mplus, mixed_sign, eye22):
    assert classify_symmetry(multi_mplus) is SymmetryClass.SYMMETRIC
    assert classify_symmetry(mixed_sign) is SymmetryClass.SYMMETRIC
    assert classify_symmetry(eye22, 0) is SymmetryClass.SYMMETRIC
    e = np.zeros(16)
    e[1] = 1.0  # a[0, 0, 0, 1]
    assert classify_symmetry(new_dense(2, 2, e)) is SymmetryClass.GENERAL


def test_weakly_symmetric_not_symmetric():
    a = np.zeros((2, 2, 2, 2))
    a[0, 0, 1, 1] = a[1, 1, 0, 0] = 1.0  # weak partners, but x-swap partner a[1,0,0,1] is 0
    assert classify_symmetry(new_dense(2, 2, a)) is SymmetryClass.WEAKLY_SYMMETRIC


def test_symmetry_tolerance():
    a = np.array(catalog.multi_mplus_tensor().data)
    a[0, 0, 0, 1] += 1e-13
    T = new_dense(2, 2, a)
    assert classify_symmetry(T, 0) is SymmetryClass.GENERAL
    assert classify_symmetry(T, 1e-12) is SymmetryClass.SYMMETRIC


@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("n", range(2, 7))
def test_identity_is_symmetric(m, n):
    assert classify_symmetry(identity_tensor(m, n), 0) is SymmetryClass.SYMMETRIC


def test_identity_entries():
    T = identity_tensor(2, 2)
    ones = {idx for idx in np.ndindex(2, 2, 2, 2) if entry(T, *idx) == 1}
    assert ones == {(0, 0, 0, 0), (0, 1, 0, 1), (1, 0, 1, 0), (1, 1, 1, 1)}
    assert np.sum(T.entries) == 4


def test_nonnegativity_is_exact(multi_mplus, zero22):
    assert is_nonnegative(multi_mplus)
    assert is_nonnegative(zero22)
    e = np.zeros(16)
    e[7] = -1e-12
    assert not is_nonnegative(new_dense(2, 2, e))


def test_single_flip_changes_verdict(rng):
    a = rng.uniform(0, 1, (2, 3, 2, 3))
    for idx in [(0, 0, 0, 0), (1, 2, 0, 1), (1, 1, 1, 1)]:
        b = a.copy()
        b[idx] = -b[idx] - 1e-300
        assert is_nonnegative(new_dense(2, 3, a)) and not is_nonnegative(new_dense(2, 3, b))


def test_slices(multi_mplus, eye22, zero22):
    # hand expansion: a_{1111}=4, a_{1121}=a_{2111}=1, a_{2121}=10 (1-based)
    np.testing.assert_array_equal(slice_x(multi_mplus, 0), [[4.0, 1.0], [1.0, 10.0]])
    np.testing.assert_array_equal(slice_x(eye22, 0), np.eye(2))
    np.testing.assert_array_equal(slice_y(zero22, 0), np.zeros((2, 2)))


def test_slices_symmetric_exactly(rng):
    for _ in range(20):
        m, n = rng.integers(2, 6, size=2)
        a = rng.standard_normal((m, n, m, n))
        T = new_dense(m, n, a)
        for j in range(n):
            S = slice_x(T, j)
            assert np.array_equal(S, S.T)
        for i in range(m):
            S = slice_y(T, i)
            assert np.array_equal(S, S.T)


def test_slice_index_range(eye22):
    with pytest.raises(IndexOutOfRangeError):
        slice_x(eye22, 2)
    with pytest.raises(IndexOutOfRangeError):
        slice_y(eye22, -1)


def test_zero_tensor_helper():
    assert not np.any(zero_tensor(3, 2).entries)
