import csv
import io

import numpy as np
import pytest

from biquad import bench
from biquad.collatz import CollatzConfig, Status
from biquad.tensor import SymmetryClass, classify_symmetry


def test_generator():
    T = bench.gen_random_symmetric_nbq(3, 4, 12)
    assert classify_symmetry(T, 1e-15) is SymmetryClass.SYMMETRIC
    assert np.all(T.entries >= 0) and np.all(T.entries <= 1)
    assert np.array_equal(T.entries, bench.gen_random_symmetric_nbq(3, 4, 12).entries)
    assert not np.array_equal(T.entries, bench.gen_random_symmetric_nbq(3, 4, 13).entries)


@pytest.mark.parametrize("mode", ["fixed-tensor", "fresh-tensor"])
def test_deterministic(mode):
    cfg = bench.BenchConfig(4, 3, repeats=8, seed=5, mode=mode)
    a, b = bench.run_experiment(cfg).to_dict(), bench.run_experiment(cfg).to_dict()
    a.pop("mean_time_seconds")
    b.pop("mean_time_seconds")
    assert a == b and a["mode"] == mode


def test_report_invariants():
    rep = bench.run_experiment(bench.BenchConfig(5, 5, repeats=10, seed=2))
    assert rep.max_iterations_hits == 0 and rep.failures == 0
    for r in rep.runs:
        assert r.status.converged or r.status is Status.MAX_ITERATIONS
    assert max(r.lambda_lower for r in rep.runs) <= rep.rho_M_observed <= max(r.lambda_upper for r in rep.runs)
    assert rep.ratio_lower == rep.ratio_upper == 1.0


def test_fixed_tensor_argument(multi_mplus):
    rep = bench.run_experiment(bench.BenchConfig(2, 2, repeats=5, tensor=multi_mplus))
    assert rep.rho_M_observed == pytest.approx(10.9075, abs=1e-4)


def test_iteration_cap_is_counted(multi_mplus):
    cfg = bench.BenchConfig(2, 2, repeats=4, tensor=multi_mplus, collatz=CollatzConfig(k_max=2))
    assert bench.run_experiment(cfg).max_iterations_hits == 4


def test_csv_and_table():
    rep = bench.run_experiment(bench.BenchConfig(3, 3, repeats=3, seed=1))
    rows = list(csv.reader(io.StringIO(bench.reports_to_csv([rep]))))
    assert rows[0] == ["m", "n", "iter", "time_s", "gap", "res", "ratio_lower", "ratio_upper"]
    assert rows[1][:2] == ["3", "3"] and len(rows) == 2
    table = bench.format_table([rep]).splitlines()
    assert len(table) == 3 and table[0].split()[:3] == ["m", "n", "rho_M"]


def test_config_validation(multi_mplus):
    with pytest.raises(ValueError):
        bench.BenchConfig(2, 2, repeats=0)
    with pytest.raises(ValueError):
        bench.BenchConfig(2, 2, mode="other")
    with pytest.raises(ValueError):
        bench.BenchConfig(3, 2, tensor=multi_mplus)
