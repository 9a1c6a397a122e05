"""Kronecker-structured tensors ``a[i, j, k, l] = B[i, k] * C[j, l]``.

For symmetric ``B`` and ``C`` the form factors as ``f = (x'Bx)(y'Cy)`` and
every nonzero M-eigenpair is a product of matrix eigenpairs: ``(a*b, x, y)``
with ``Bx = a x`` and ``Cy = b y``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NonSymmetricFactorError
from .tensor import BiquadraticTensor, new_dense


@dataclass(frozen=True)
class KroneckerFactors:
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        for name in ("B", "C"):
            _check_symmetric(getattr(self, name), name)


def _check_symmetric(M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {M.shape}")
    if not np.array_equal(M, M.T):
        raise NonSymmetricFactorError(f"{name} is not symmetric")
    return M


def kron_build(B, C) -> BiquadraticTensor:
    B = _check_symmetric(B, "B")
    C = _check_symmetric(C, "C")
    return new_dense(B.shape[0], C.shape[0], np.einsum("ik,jl->ijkl", B, C))


def kron_defect(T: BiquadraticTensor, B, C) -> float:
    """Largest ``|(a_ijkl + a_kjil + a_ilkj + a_klij)/4 - B_ik C_jl|``."""
    B = np.asarray(B, dtype=float)
    C = np.asarray(C, dtype=float)
    if B.shape != (T.m, T.m) or C.shape != (T.n, T.n):
        raise DimensionMismatchError(
            f"factors {B.shape}, {C.shape} do not fit a tensor with m={T.m}, n={T.n}"
        )
    a = T.data
    sym = 0.25 * (a + a.transpose(2, 1, 0, 3) + a.transpose(0, 3, 2, 1) + a.transpose(2, 3, 0, 1))
    return float(np.max(np.abs(sym - np.einsum("ik,jl->ijkl", B, C))))


def kron_check(T: BiquadraticTensor, B, C, tol: float = 0.0) -> bool:
    return kron_defect(T, B, C) <= tol


def jacobi_eigh(A, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps over all ``(p, q)`` pairs until the off-diagonal Frobenius norm is
    at most ``tol * ||A||_F``.  Returns ascending eigenvalues and the matrix
    of eigenvectors (columns).
    """
    A = _check_symmetric(A, "A").copy()
    n = A.shape[0]
    V = np.eye(n)
    fro = np.linalg.norm(A)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * fro or fro == 0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                # A <- J^T A J with J the (p, q) rotation
                ap, aq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * ap - s * aq, s * ap + c * aq
                ap, aq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * ap - s * aq, s * ap + c * aq
                A[p, q] = A[q, p] = 0.0  # annihilated by construction
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = c * vp - s * vq, s * vp + c * vq
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


@dataclass(frozen=True)
class FactorPair:
    lam: float
    alpha: float
    beta: float
    x: np.ndarray
    y: np.ndarray


def factor_eigenpairs(B, C, rel_zero: float = 1e-10) -> list[FactorPair]:
    """Predicted nonzero M-eigenpairs of ``kron_build(B, C)``.

    Eigenvalues of B or C below ``rel_zero`` times the factor's Frobenius
    norm count as zero and are skipped.
    """
    B = _check_symmetric(B, "B")
    C = _check_symmetric(C, "C")
    wb, vb = jacobi_eigh(B)
    wc, vc = jacobi_eigh(C)
    zb = rel_zero * np.linalg.norm(B)
    zc = rel_zero * np.linalg.norm(C)
    out = []
    for a, x in zip(wb, vb.T):
        if abs(a) <= zb:
            continue
        for b, y in zip(wc, vc.T):
            if abs(b) <= zc:
                continue
            out.append(FactorPair(float(a * b), float(a), float(b), x, y))
    return sorted(out, key=lambda p: -p.lam)


def perron_pair(M) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of a symmetric matrix and its eigenvector, sign
    fixed so the entries sum to a nonnegative number."""
    w, V = jacobi_eigh(M)
    v = V[:, -1]
    return float(w[-1]), (v if v.sum() >= 0 else -v)
