"""Dense storage, construction and classification of biquadratic tensors.

A biquadratic tensor of size m x n x m x n is stored as a read-only numpy
array indexed ``(i1, j1, i2, j2)``.  All indices are 0-based; the flat
layout is row-major, i.e. ``((i1*n + j1)*m + i2)*n + j2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    NonFiniteEntryError,
)


class SymmetryClass(enum.Enum):
    GENERAL = "General"
    WEAKLY_SYMMETRIC = "WeaklySymmetric"
    SYMMETRIC = "Symmetric"


@dataclass(frozen=True, eq=False)
class BiquadraticTensor:
    """Immutable dense biquadratic tensor.

    Use :func:`new_dense` (or the helpers below) rather than the constructor
    directly; the constructor trusts that ``data`` is already validated.
    """

    data: np.ndarray

    @property
    def m(self) -> int:
        return self.data.shape[0]

    @property
    def n(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.data.shape

    @property
    def entries(self) -> np.ndarray:
        """Flat row-major view of the entries (length m^2 n^2)."""
        return self.data.reshape(-1)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data))) if self.data.size else 0.0

    def __repr__(self) -> str:
        return f"BiquadraticTensor(m={self.m}, n={self.n})"


def _check_dims(m: int, n: int) -> None:
    if int(m) != m or int(n) != n or m < 2 or n < 2:
        raise DimensionMismatchError(f"need integers m, n >= 2, got m={m}, n={n}")


def new_dense(m: int, n: int, entries) -> BiquadraticTensor:
    """Build a tensor from a flat (or already 4-D) array of m^2 n^2 entries.

    No symmetrization is applied.
    """
    _check_dims(m, n)
    arr = np.array(entries, dtype=np.float64)
    expected = m * m * n * n
    if arr.size != expected:
        raise DimensionMismatchError(
            f"m={m}, n={n} needs {expected} entries, got {arr.size}"
        )
    if not np.all(np.isfinite(arr)):
        bad = np.argwhere(~np.isfinite(arr.reshape(m, n, m, n)))[0]
        raise NonFiniteEntryError(f"non-finite entry at index {tuple(int(k) for k in bad)}")
    arr = arr.reshape(m, n, m, n)
    arr.setflags(write=False)
    return BiquadraticTensor(arr)


def from_array(arr) -> BiquadraticTensor:
    """Build a tensor from a 4-D array of shape (m, n, m, n)."""
    arr = np.asarray(arr, dtype=np.float64)
    if arr.ndim != 4 or arr.shape[0] != arr.shape[2] or arr.shape[1] != arr.shape[3]:
        raise DimensionMismatchError(f"expected shape (m, n, m, n), got {arr.shape}")
    return new_dense(arr.shape[0], arr.shape[1], arr)


def from_coo(m: int, n: int, items) -> BiquadraticTensor:
    """Build a tensor from ``(i1, j1, i2, j2, value)`` records; the rest are zero."""
    _check_dims(m, n)
    arr = np.zeros((m, n, m, n))
    seen = set()
    for rec in items:
        if len(rec) != 5:
            raise DimensionMismatchError(f"coo record must have 5 fields, got {rec!r}")
        idx = tuple(rec[:4])
        if any(int(k) != k for k in idx):
            raise IndexOutOfRangeError(f"non-integer index {idx!r}")
        idx = tuple(int(k) for k in idx)
        _check_index(m, n, *idx)
        if idx in seen:
            raise DimensionMismatchError(f"duplicate coo index {idx}")
        seen.add(idx)
        arr[idx] = float(rec[4])
    return new_dense(m, n, arr)


def _check_index(m: int, n: int, i1: int, j1: int, i2: int, j2: int) -> None:
    if not (0 <= i1 < m and 0 <= i2 < m and 0 <= j1 < n and 0 <= j2 < n):
        raise IndexOutOfRangeError(
            f"index ({i1}, {j1}, {i2}, {j2}) out of range for m={m}, n={n} (0-based)"
        )


def entry(T: BiquadraticTensor, i1: int, j1: int, i2: int, j2: int) -> float:
    _check_index(T.m, T.n, i1, j1, i2, j2)
    return float(T.data[i1, j1, i2, j2])


def weak_partner(a: np.ndarray) -> np.ndarray:
    """Array whose (i1, j1, i2, j2) entry is a[i2, j2, i1, j1]."""
    return a.transpose(2, 3, 0, 1)


def x_swap(a: np.ndarray) -> np.ndarray:
    """Array whose (i1, j1, i2, j2) entry is a[i2, j1, i1, j2]."""
    return a.transpose(2, 1, 0, 3)


def y_swap(a: np.ndarray) -> np.ndarray:
    """Array whose (i1, j1, i2, j2) entry is a[i1, j2, i2, j1]."""
    return a.transpose(0, 3, 2, 1)


def classify_symmetry(T: BiquadraticTensor, tol: float = 0.0) -> SymmetryClass:
    """Return the strongest symmetry class that holds entrywise within ``tol``."""
    a = T.data
    if np.max(np.abs(a - weak_partner(a))) > tol:
        return SymmetryClass.GENERAL
    if np.max(np.abs(a - x_swap(a))) > tol or np.max(np.abs(a - y_swap(a))) > tol:
        return SymmetryClass.WEAKLY_SYMMETRIC
    return SymmetryClass.SYMMETRIC


def is_nonnegative(T: BiquadraticTensor) -> bool:
    return bool(np.all(T.data >= 0.0))


def identity_tensor(m: int, n: int) -> BiquadraticTensor:
    """The tensor with entries delta(i1, i2) * delta(j1, j2)."""
    _check_dims(m, n)
    return new_dense(m, n, np.einsum("ik,jl->ijkl", np.eye(m), np.eye(n)))


def zero_tensor(m: int, n: int) -> BiquadraticTensor:
    _check_dims(m, n)
    return new_dense(m, n, np.zeros(m * m * n * n))


def slice_x(T: BiquadraticTensor, j: int) -> np.ndarray:
    """Symmetrized m x m slice 1/2 (A[:, j, :, j] + A[:, j, :, j]^T)."""
    if not 0 <= j < T.n:
        raise IndexOutOfRangeError(f"slice index j={j} out of range [0, {T.n})")
    s = T.data[:, j, :, j]
    return 0.5 * (s + s.T)


def slice_y(T: BiquadraticTensor, i: int) -> np.ndarray:
    """Symmetrized n x n slice 1/2 (A[i, :, i, :] + A[i, :, i, :]^T)."""
    if not 0 <= i < T.m:
        raise IndexOutOfRangeError(f"slice index i={i} out of range [0, {T.m})")
    s = T.data[i, :, i, :]
    return 0.5 * (s + s.T)
