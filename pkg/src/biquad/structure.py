"""Supports, support propagation and (partial) irreducibility.

A tensor is x-partially irreducible when every symmetrized slice
``slice_x(T, j)`` is an irreducible matrix, and y-partially irreducible when
every ``slice_y(T, i)`` is.  Two independent deciders are provided:

* graph connectivity of each slice's nonzero pattern, and
* iterated support propagation from unit-vector seeds through ``A + I``
  (tracked exactly on the boolean nonzero pattern, with a floating-point
  variant kept as a cross-check).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy.sparse.csgraph import connected_components

from . import contraction
from .errors import InternalConsistencyError, NotNonnegativeError, ZeroVectorError
from .tensor import BiquadraticTensor, is_nonnegative, slice_x, slice_y


@dataclass(frozen=True)
class IndexSupport:
    side: str
    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)


def support(vec, tol: float = 0.0, side: str = "x") -> IndexSupport:
    vec = np.asarray(vec, dtype=float)
    return IndexSupport(side, tuple(int(k) for k in np.flatnonzero(np.abs(vec) > tol)))


def _require_nonnegative(T: BiquadraticTensor) -> None:
    if not is_nonnegative(T):
        raise NotNonnegativeError("operation requires a nonnegative tensor")


def propagate_support(T: BiquadraticTensor, x, y) -> tuple[np.ndarray, np.ndarray]:
    """One step of the ``(A + I)`` propagation map.

    Returns ``(g + x * |y|^2, h + y * |x|^2)``; the supports of the outputs
    contain those of the inputs.
    """
    _require_nonnegative(T)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0) or np.any(y < 0):
        raise NotNonnegativeError("propagation needs nonnegative x and y")
    if not np.any(x) or not np.any(y):
        raise ZeroVectorError("propagation needs nonzero x and y")
    u = contraction.grad_g(T, x, y) + x * float(y @ y)
    v = contraction.grad_h(T, x, y) + y * float(x @ x)
    return u, v


# -- graph method ------------------------------------------------------------

def _pattern(S: np.ndarray, tol: float) -> np.ndarray:
    return S > tol


def matrix_components(S: np.ndarray, tol: float = 0.0) -> list[tuple[int, ...]]:
    """Connected components of the nonzero pattern of a symmetric matrix,
    each sorted, ordered by smallest member."""
    ncomp, labels = connected_components(_pattern(S, tol), directed=False)
    comps = [tuple(int(k) for k in np.flatnonzero(labels == c)) for c in range(ncomp)]
    return sorted(comps)


def is_irreducible_matrix(S: np.ndarray, tol: float = 0.0) -> bool:
    return len(matrix_components(S, tol)) == 1


def _slices(T: BiquadraticTensor, side: str) -> list[np.ndarray]:
    if side == "x":
        return [slice_x(T, j) for j in range(T.n)]
    return [slice_y(T, i) for i in range(T.m)]


def _graph_verdict(T: BiquadraticTensor, side: str, tol: float) -> bool:
    return all(is_irreducible_matrix(S, tol) for S in _slices(T, side))


def is_x_partially_irreducible(T: BiquadraticTensor, tol: float = 0.0) -> bool:
    """Graph and propagation verdicts for the x side; raises if they differ."""
    return _checked_verdict(T, "x", tol)


def is_y_partially_irreducible(T: BiquadraticTensor, tol: float = 0.0) -> bool:
    return _checked_verdict(T, "y", tol)


def _checked_verdict(T: BiquadraticTensor, side: str, tol: float) -> bool:
    _require_nonnegative(T)
    graph = _graph_verdict(T, side, tol)
    prop = verify_by_propagation(T, tol)[0 if side == "x" else 1]
    if graph != prop:
        raise InternalConsistencyError(
            f"{side}-side verdicts disagree: graph={graph}, propagation={prop}"
        )
    return graph


# -- propagation method -------------------------------------------------------

def _propagated_pattern(S: np.ndarray, seed: int, steps: int, tol: float) -> np.ndarray:
    # boolean semiring: next = current OR (pattern(S) @ current)
    P = _pattern(S, tol)
    cur = np.zeros(S.shape[0], dtype=bool)
    cur[seed] = True
    for _ in range(steps):
        cur = cur | np.any(P & cur[None, :], axis=1)
    return cur


def verify_by_propagation(T: BiquadraticTensor, tol: float = 0.0) -> tuple[bool, bool]:
    """Iterated-support verdicts ``(x_side, y_side)``.

    For each seed pair ``(e_i, e_j)`` the x-vector is propagated m-1 times
    with y held at ``e_j`` (and the y-vector n-1 times with x held at
    ``e_i``); a side passes iff every propagated vector is entrywise
    positive.  With a unit vector held fixed the propagation reduces to
    ``slice + I`` acting on the nonzero pattern.
    """
    _require_nonnegative(T)
    m, n = T.m, T.n
    x_ok = all(
        _propagated_pattern(slice_x(T, j), i, m - 1, tol).all()
        for i in range(m) for j in range(n)
    )
    y_ok = all(
        _propagated_pattern(slice_y(T, i), j, n - 1, tol).all()
        for i in range(m) for j in range(n)
    )
    return x_ok, y_ok


def verify_by_float_propagation(T: BiquadraticTensor) -> tuple[bool, bool]:
    """Same test as :func:`verify_by_propagation`, run through the tensor
    contractions in floating point (renormalized each step)."""
    _require_nonnegative(T)
    m, n = T.m, T.n
    eye_m, eye_n = np.eye(m), np.eye(n)
    x_ok = y_ok = True
    for i in range(m):
        for j in range(n):
            x = eye_m[i].copy()
            for _ in range(m - 1):
                x, _v = propagate_support(T, x, eye_n[j])
                x /= np.max(x)
            x_ok &= bool(np.all(x > 0))
            y = eye_n[j].copy()
            for _ in range(n - 1):
                _u, y = propagate_support(T, eye_m[i], y)
                y /= np.max(y)
            y_ok &= bool(np.all(y > 0))
    return x_ok, y_ok


# -- report -------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A reducibility certificate.

    ``side == "x"``: ``block`` is J_x and ``index`` is the column j with
    ``a[i2, j, i1, j] + a[i1, j, i2, j] == 0`` for i1 in J_x, i2 outside.
    ``side == "y"``: ``block`` is J_y and ``index`` is the row i.
    """

    side: str
    block: tuple[int, ...]
    index: int

    def holds(self, T: BiquadraticTensor, tol: float = 0.0) -> bool:
        a = T.data
        size = T.m if self.side == "x" else T.n
        inside = list(self.block)
        outside = [k for k in range(size) if k not in self.block]
        if not inside or not outside:
            return False
        if self.side == "x":
            j = self.index
            blk = a[np.ix_(inside, [j], outside, [j])][:, 0, :, 0]
            blk_t = a[np.ix_(outside, [j], inside, [j])][:, 0, :, 0].T
        else:
            i = self.index
            blk = a[np.ix_([i], inside, [i], outside)][0, :, 0, :]
            blk_t = a[np.ix_([i], outside, [i], inside)][0, :, 0, :].T
        return bool(np.all(np.abs(blk + blk_t) <= tol))


@dataclass(frozen=True)
class IrreducibilityReport:
    x_partial_irreducible: bool
    y_partial_irreducible: bool
    irreducible: bool
    witness: Optional[Witness]
    method_agreement: bool

    def to_dict(self) -> dict:
        return {
            "x_partial": self.x_partial_irreducible,
            "y_partial": self.y_partial_irreducible,
            "irreducible": self.irreducible,
            "witness": None if self.witness is None else asdict(self.witness),
            "method_agreement": self.method_agreement,
        }


def find_witness(T: BiquadraticTensor, tol: float = 0.0) -> Optional[Witness]:
    """Smallest disconnected slice (x side first) and its first component."""
    for side in ("x", "y"):
        for idx, S in enumerate(_slices(T, side)):
            comps = matrix_components(S, tol)
            if len(comps) > 1:
                return Witness(side, comps[0], idx)
    return None


def irreducibility_report(T: BiquadraticTensor, tol: float = 0.0) -> IrreducibilityReport:
    _require_nonnegative(T)
    gx, gy = _graph_verdict(T, "x", tol), _graph_verdict(T, "y", tol)
    px, py = verify_by_propagation(T, tol)
    agree = (gx, gy) == (px, py)
    witness = None if (gx and gy) else find_witness(T, tol)
    return IrreducibilityReport(gx, gy, gx and gy, witness, agree)
