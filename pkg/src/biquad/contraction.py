"""Multilinear forms of a biquadratic tensor.

For a tensor ``A`` and vectors ``x`` (length m), ``y`` (length n):

* ``f(x, y) = sum a[i1,j1,i2,j2] x[i1] y[j1] x[i2] y[j2]``
* ``g = 1/2 grad_x f`` and ``h = 1/2 grad_y f``, written out as the two
  partial contractions each (no symmetry of ``A`` is assumed).

An M-eigenpair ``(lam, x, y)`` satisfies ``g = lam x``, ``h = lam y`` with
unit ``x`` and ``y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePointError, DimensionMismatchError, NotNonnegativeError
from .tensor import BiquadraticTensor


def _vectors(T: BiquadraticTensor, x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != (T.m,) or y.shape != (T.n,):
        raise DimensionMismatchError(
            f"expected x of length {T.m} and y of length {T.n}, "
            f"got shapes {x.shape} and {y.shape}"
        )
    return x, y


def _x_matrix(a: np.ndarray, y: np.ndarray) -> np.ndarray:
    # M[i1, i2] = sum_{j1, j2} a[i1, j1, i2, j2] y[j1] y[j2]
    return np.tensordot(np.tensordot(a, y, axes=([3], [0])), y, axes=([1], [0]))


def _y_matrix(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    # N[j1, j2] = sum_{i1, i2} a[i1, j1, i2, j2] x[i1] x[i2]
    return np.tensordot(np.tensordot(a, x, axes=([0], [0])), x, axes=([1], [0]))


def eval_f(T: BiquadraticTensor, x, y) -> float:
    x, y = _vectors(T, x, y)
    return float(x @ _x_matrix(T.data, y) @ x)


def grad_g_parts(T: BiquadraticTensor, x, y) -> tuple[np.ndarray, np.ndarray]:
    """The two summands of ``g`` before halving.

    First: ``sum a[i1, j1, i, j2] x[i1] y[j1] y[j2]``; second:
    ``sum a[i, j1, i2, j2] y[j1] x[i2] y[j2]``.
    """
    x, y = _vectors(T, x, y)
    M = _x_matrix(T.data, y)
    return M.T @ x, M @ x


def grad_h_parts(T: BiquadraticTensor, x, y) -> tuple[np.ndarray, np.ndarray]:
    x, y = _vectors(T, x, y)
    N = _y_matrix(T.data, x)
    return N.T @ y, N @ y


def grad_g(T: BiquadraticTensor, x, y) -> np.ndarray:
    p, q = grad_g_parts(T, x, y)
    return 0.5 * (p + q)


def grad_h(T: BiquadraticTensor, x, y) -> np.ndarray:
    p, q = grad_h_parts(T, x, y)
    return 0.5 * (p + q)


@dataclass(frozen=True)
class RatioBounds:
    """Extreme componentwise ratios ``g_i / x_i`` and ``h_j / y_j``.

    ``arg_min`` and ``arg_max`` are ``(side, position)`` labels with side in
    ``{"x", "y"}``.
    """

    v_val: float
    u_val: float
    arg_min: tuple[str, int]
    arg_max: tuple[str, int]


def ratios(T: BiquadraticTensor, x, y) -> tuple[np.ndarray, np.ndarray]:
    """Componentwise ratios ``g/x`` and ``h/y`` over the extended reals.

    A zero coordinate with a positive gradient entry gives ``+inf``; a zero
    coordinate with a zero gradient entry is a degenerate point.
    """
    x, y = _vectors(T, x, y)
    if np.any(x < 0) or np.any(y < 0):
        raise NotNonnegativeError("ratio bounds need nonnegative x and y")
    g, h = grad_g(T, x, y), grad_h(T, x, y)
    out = []
    for side, vec, grad in (("x", x, g), ("y", y, h)):
        zero = vec == 0
        if np.any(zero & (grad == 0)):
            k = int(np.flatnonzero(zero & (grad == 0))[0])
            raise DegeneratePointError(f"both {side}[{k}] and its gradient entry vanish")
        r = np.empty_like(vec)
        r[~zero] = grad[~zero] / vec[~zero]
        r[zero] = np.where(grad[zero] > 0, math.inf, -math.inf)
        out.append(r)
    return out[0], out[1]


def ratio_bounds(T: BiquadraticTensor, x, y) -> RatioBounds:
    rx, ry = ratios(T, x, y)
    labelled = [("x", i, r) for i, r in enumerate(rx)] + [("y", j, r) for j, r in enumerate(ry)]
    lo = min(labelled, key=lambda t: t[2])
    hi = max(labelled, key=lambda t: t[2])
    return RatioBounds(float(lo[2]), float(hi[2]), (lo[0], lo[1]), (hi[0], hi[1]))


def residual_blocks(T: BiquadraticTensor, lam: float, x, y) -> tuple[float, float]:
    """Infinity norms of ``g - lam x`` and ``h - lam y``."""
    x, y = _vectors(T, x, y)
    rx = float(np.max(np.abs(grad_g(T, x, y) - lam * x)))
    ry = float(np.max(np.abs(grad_h(T, x, y) - lam * y)))
    return rx, ry


def residual(T: BiquadraticTensor, lam: float, x, y) -> float:
    return max(residual_blocks(T, lam, x, y))
