"""Small reference tensors with known M-spectra.

Entries are written with 1-based labels ``"i1 j1 i2 j2"`` for readability
and converted to 0-based storage on construction.
"""

from __future__ import annotations

import numpy as np

from .tensor import BiquadraticTensor, new_dense


def from_labels(m: int, n: int, values: dict[str, float]) -> BiquadraticTensor:
    """Build an m x n x m x n tensor from ``{"i1j1i2j2": value}`` with 1-based digits."""
    a = np.zeros((m, n, m, n))
    for label, v in values.items():
        idx = tuple(int(c) - 1 for c in label.replace(" ", ""))
        a[idx] = v
    return new_dense(m, n, a)


def multi_mplus_tensor() -> BiquadraticTensor:
    """Irreducible symmetric 2x2x2x2 tensor with two distinct M++ eigenvalues.

    Its M-eigenvalues are 10.9075 (twice), 10.5000, 5.5925 (twice), 4.8202,
    3.7408 and 1.2332; the first three carry positive eigenvectors.
    """
    vals = {"1111": 4.0, "1212": 10.0, "2121": 10.0, "2222": 2.0}
    vals.update(dict.fromkeys(["1112", "1121", "1211", "2111"], 1.0))
    vals.update(dict.fromkeys(["1122", "1221", "2112", "2211"], 1.0))
    vals.update(dict.fromkeys(["1222", "2212", "2122", "2221"], 2.0))
    return from_labels(2, 2, vals)


MULTI_MPLUS_PAIRS = [
    (10.9075, (0.2936, 0.9559), (0.9442, 0.3294)),
    (10.9075, (0.9442, 0.3294), (0.2936, 0.9559)),
    (10.5000, (0.7071, 0.7071), (0.7071, 0.7071)),
    (5.5925, (-0.7934, 0.6087), (0.7699, 0.6381)),
    (5.5925, (0.7699, 0.6381), (-0.7934, 0.6087)),
    (4.8202, (-0.8111, 0.5849), (-0.8111, 0.5849)),
    (3.7408, (-0.9910, 0.1336), (-0.9910, 0.1336)),
    (1.2332, (-0.1908, 0.9816), (-0.1908, 0.9816)),
]


def mixed_sign_tensor() -> BiquadraticTensor:
    """Reducible symmetric 2x2x2x2 tensor whose spectrum has non-M+ values on
    both sides of the smallest M+ eigenvalue, including a negative one."""
    vals = {"1111": 1.0, "1211": 0.0, "1112": 0.0, "1212": 1.0,
            "1121": 2.0, "2111": 2.0, "1222": 0.0, "2212": 0.0,
            "2121": 2.0, "2122": 0.0, "2221": 0.0, "2222": 1.0}
    vals.update(dict.fromkeys(["1122", "1221", "2112", "2211"], 2.0))
    return from_labels(2, 2, vals)


MIXED_SIGN_PAIRS = [
    (4.6312, (0.6639, 0.7478), (0.8774, 0.4798)),
    (2.3970, (-0.6577, 0.7533), (-0.5762, 0.8173)),
    (1.7917, (-0.1048, 0.9945), (-0.8848, 0.4660)),
    (1.0000, (0.0, 1.0), (0.0, 1.0)),
    (-0.1142, (0.7405, 0.6720), (-0.4884, 0.8726)),
    (-1.9038, (-0.7433, 0.6690), (0.8250, 0.5651)),
]


def corner_tensor() -> BiquadraticTensor:
    """2x2x2x2 tensor with a single unit entry at (0, 0, 0, 0): M-eigenvalues 1 and 0."""
    return from_labels(2, 2, {"1111": 1.0})


def cross_coupling_tensor() -> BiquadraticTensor:
    """x- and y-reducible 2x2x2x2 tensor with g = (x2 y1 y2, x1 y1 y2)."""
    return from_labels(2, 2, dict.fromkeys(["1122", "1221", "2112", "2211"], 0.5))


def diagonal_tensor(values) -> BiquadraticTensor:
    """Tensor with ``a[i, j, i, j] = values[i, j]`` and zeros elsewhere."""
    values = np.asarray(values, dtype=float)
    m, n = values.shape
    a = np.zeros((m, n, m, n))
    for i in range(m):
        for j in range(n):
            a[i, j, i, j] = values[i, j]
    return new_dense(m, n, a)


def data_file(name: str) -> str:
    """Path of a bundled tensor file, e.g. ``data_file("multi_mplus.json")``."""
    from importlib.resources import files

    return str(files("biquad") / "data" / name)
