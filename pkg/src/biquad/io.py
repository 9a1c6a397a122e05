"""JSON file formats for tensors and matrices.

Tensor files are objects with ``"m"``, ``"n"`` and either ``"dense"`` (flat
row-major list of m^2 n^2 numbers) or ``"coo"`` (list of
``[i1, j1, i2, j2, value]`` records, unspecified entries zero).  Matrix files
carry ``"rows"``, ``"cols"`` and ``"dense"``.  The writers emit scalars with
17 significant digits so that a write/read round trip is bit-exact.
"""

from __future__ import annotations

import json
import os

import numpy as np

from .errors import BiquadError, ParseError
from .tensor import BiquadraticTensor, from_coo, new_dense


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _dense_list(values) -> str:
    return "[" + ", ".join(_fmt(v) for v in np.ravel(values)) + "]"


def tensor_to_json(T: BiquadraticTensor) -> str:
    return f'{{"m": {T.m}, "n": {T.n}, "dense": {_dense_list(T.entries)}}}\n'


def tensor_from_obj(obj) -> BiquadraticTensor:
    if not isinstance(obj, dict):
        raise ParseError("tensor file must hold a JSON object")
    try:
        m, n = obj["m"], obj["n"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(m, int) or not isinstance(n, int):
        raise ParseError("fields 'm' and 'n' must be integers")
    has_dense, has_coo = "dense" in obj, "coo" in obj
    if has_dense == has_coo:
        raise ParseError("exactly one of 'dense' or 'coo' is required")
    try:
        if has_dense:
            return new_dense(m, n, obj["dense"])
        return from_coo(m, n, obj["coo"])
    except BiquadError as exc:
        raise ParseError(str(exc)) from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed tensor data: {exc}") from exc


def tensor_from_json(text: str) -> BiquadraticTensor:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return tensor_from_obj(obj)


def load_tensor(path: str | os.PathLike) -> BiquadraticTensor:
    with open(path, encoding="utf-8") as fh:
        return tensor_from_json(fh.read())


def save_tensor(T: BiquadraticTensor, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(tensor_to_json(T))


def matrix_to_json(M) -> str:
    M = np.asarray(M, dtype=float)
    r, c = M.shape
    return f'{{"rows": {r}, "cols": {c}, "dense": {_dense_list(M)}}}\n'


def matrix_from_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
        r, c = obj["rows"], obj["cols"]
        data = np.array(obj["dense"], dtype=float)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix file: {exc}") from exc
    if not isinstance(r, int) or not isinstance(c, int) or r < 1 or c < 1:
        raise ParseError("'rows' and 'cols' must be positive integers")
    if data.size != r * c:
        raise ParseError(f"matrix {r}x{c} needs {r * c} entries, got {data.size}")
    if not np.all(np.isfinite(data)):
        raise ParseError("matrix has non-finite entries")
    return data.reshape(r, c)


def load_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return matrix_from_json(fh.read())


def save_matrix(M, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(matrix_to_json(M))
