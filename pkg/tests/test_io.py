import json

import numpy as np
import pytest

from biquad import io
from biquad.errors import ParseError
from biquad.tensor import new_dense


def test_round_trip_bit_exact(rng, tmp_path):
    for m, n in [(2, 2), (3, 4), (5, 2)]:
        T = new_dense(m, n, rng.standard_normal(m * m * n * n) * 10.0 ** rng.integers(-20, 20))
        path = tmp_path / f"t{m}{n}.json"
        io.save_tensor(T, path)
        back = io.load_tensor(path)
        assert np.array_equal(back.entries, T.entries)
        assert back.entries.tobytes() == T.entries.tobytes()


def test_writer_uses_17_digits():
    T = new_dense(2, 2, np.full(16, 0.1))
    obj = json.loads(io.tensor_to_json(T))
    assert set(obj) == {"m", "n", "dense"}
    assert "0.10000000000000001" in io.tensor_to_json(T)


def test_coo_reader():
    T = io.tensor_from_json('{"m": 2, "n": 3, "coo": [[0, 1, 1, 2, 2.5], [1, 0, 0, 0, 1]]}')
    assert T.data[0, 1, 1, 2] == 2.5 and T.data[1, 0, 0, 0] == 1.0
    assert np.count_nonzero(T.entries) == 2


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"m": 2}',
    '{"m": 2, "n": 2, "dense": [1, 2, 3]}',
    '{"m": 2, "n": 2, "coo": [[0, 0, 0, 0, 1], [0, 0, 0, 0, 2]]}',
    '{"m": 2, "n": 2, "coo": [[0, 0, 0, 2, 1]]}',
    '{"m": 2, "n": 2, "dense": [], "coo": []}',
    '{"m": 2.5, "n": 2, "dense": []}',
    '{"m": 2, "n": 2, "dense": ["a", 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]}',
])
def test_malformed_inputs(text):
    with pytest.raises(ParseError):
        io.tensor_from_json(text)


def test_matrix_round_trip(tmp_path):
    M = np.array([[2.0, 1.0 / 3.0], [1.0 / 3.0, 2.0]])
    io.save_matrix(M, tmp_path / "b.json")
    assert np.array_equal(io.load_matrix(tmp_path / "b.json"), M)
    with pytest.raises(ParseError):
        io.matrix_from_json('{"rows": 2, "cols": 2, "dense": [1, 2, 3]}')
