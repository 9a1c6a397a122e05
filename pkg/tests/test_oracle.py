import numpy as np
import pytest

from biquad import bench, catalog, contraction, oracle, structure
from biquad.errors import DimensionMismatchError, InternalConsistencyError
from biquad.oracle import EigenClass, MEigenpair
from biquad.tensor import identity_tensor, new_dense, zero_tensor

from conftest import random_tensor


def _distinct(values, tol=1e-6):
    out = []
    for v in sorted(values, reverse=True):
        if not out or abs(out[-1] - v) > tol:
            out.append(v)
    return out


def test_canonicalize():
    x, y = oracle.canonicalize([0.3, -0.9], [-0.5, -0.5])
    np.testing.assert_array_equal(x, [-0.3, 0.9])
    np.testing.assert_array_equal(y, [0.5, 0.5])  # tie: lowest index wins


@pytest.mark.parametrize("x, y, cls", [
    ([-0.6, -0.8], [0.6, 0.8], EigenClass.MPLUSPLUS),
    ([1.0, 0.0], [0.0, -1.0], EigenClass.MPLUS),
    ([0.6, -0.8], [0.6, 0.8], EigenClass.M),
])
def test_classify(x, y, cls):
    p = oracle.classify(MEigenpair(1.0, np.array(x), np.array(y)))
    assert p.cls is cls
    if cls >= EigenClass.MPLUS:
        assert np.all(p.x >= 0) and np.all(p.y >= 0)


def test_classify_rejects_negative_mplus(eye22):
    with pytest.raises(InternalConsistencyError):
        oracle.classify(MEigenpair(-1.0, np.array([1.0, 0.0]), np.array([1.0, 0.0])), eye22)


def test_multi_mplus_spectrum(multi_mplus):
    pairs = oracle.enumerate_2x2(multi_mplus)
    assert len(pairs) == 8
    for p, (lam, x, y) in zip(pairs, catalog.MULTI_MPLUS_PAIRS):
        assert p.lam == pytest.approx(lam, abs=1e-3)
        cx, cy = oracle.canonicalize(x, y)
        np.testing.assert_allclose(p.x, cx, atol=1e-3)
        np.testing.assert_allclose(p.y, cy, atol=1e-3)
    assert [p.cls.label for p in pairs] == ["M++"] * 3 + ["M"] * 5


def test_eigenvalue_equals_form(multi_mplus, mixed_sign, corner):
    for T in (multi_mplus, mixed_sign, corner):
        for p in oracle.enumerate_2x2(T):
            assert abs(p.lam - contraction.eval_f(T, p.x, p.y)) <= 10 * 1e-10
            assert p.residual <= 1e-10


def test_summaries(multi_mplus, mixed_sign):
    s = oracle.spectral_summary(oracle.enumerate_2x2(multi_mplus), multi_mplus)
    assert s.lambda_max == pytest.approx(10.9075, abs=1e-4)
    assert s.rho_M == s.lambda_max
    assert s.lambda_plus_min == pytest.approx(10.5, abs=1e-12)
    s = oracle.spectral_summary(oracle.enumerate_2x2(mixed_sign), mixed_sign)
    assert s.lambda_max == pytest.approx(4.6312, abs=1e-4)
    assert s.lambda_plus_min == pytest.approx(1.0, abs=1e-12)
    assert _distinct(s.eigenvalues, 1e-4) == pytest.approx([4.6312, 2.3970, 1.7917, 1.0, -0.1142, -1.9038], abs=1e-4)


def test_summary_consistency_check(eye22):
    bad = [MEigenpair(1.0, np.array([1.0, 0.0]), np.array([1.0, 0.0]), EigenClass.MPLUS),
           MEigenpair(-3.0, np.array([1.0, 0.0]), np.array([0.0, 1.0]))]
    with pytest.raises(InternalConsistencyError):
        oracle.spectral_summary(bad, eye22)


def test_constant_and_identity_forms():
    z = oracle.enumerate_2x2(zero_tensor(2, 2))
    assert len(z) == 1 and z[0].lam == 0.0 and not z[0].isolated
    e = oracle.enumerate_2x2(identity_tensor(2, 2))
    assert len(e) == 1 and e[0].lam == pytest.approx(1.0) and e[0].cls is EigenClass.MPLUS


def test_corner_spectrum(corner):
    pairs = oracle.enumerate_2x2(corner)
    assert _distinct([p.lam for p in pairs]) == pytest.approx([1.0, 0.0], abs=1e-12)
    assert all(p.cls is not EigenClass.MPLUSPLUS for p in pairs)


def test_rejects_other_sizes():
    with pytest.raises(DimensionMismatchError):
        oracle.enumerate_2x2(identity_tensor(2, 3))


def test_small_search_matches_grid_oracle():
    rng = np.random.default_rng(5)
    for k in range(6):
        T = random_tensor(rng, 2, 2, nonneg=bool(k % 2), symmetric=True)
        grid = _distinct([p.lam for p in oracle.enumerate_2x2(T)])
        small = _distinct(oracle.enumerate_small(T, n_starts=200, seed=k).eigenvalues)
        assert small == pytest.approx(grid, abs=1e-6)


def test_small_search_diagonal():
    vals = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    res = oracle.enumerate_small(catalog.diagonal_tensor(vals), n_starts=300)
    assert not res.exhaustive
    assert _distinct(res.eigenvalues) == pytest.approx([6, 5, 4, 3, 2, 1], abs=1e-9)
    assert all(p.cls >= EigenClass.MPLUS for p in res.pairs)


def test_small_search_size_limit():
    with pytest.raises(DimensionMismatchError):
        oracle.enumerate_small(identity_tensor(7, 6))


def test_weak_perron_frobenius_sparse():
    rng = np.random.default_rng(8)
    for _ in range(30):
        a = rng.uniform(0, 1, (2, 2, 2, 2)) * (rng.uniform(0, 1, (2, 2, 2, 2)) < 0.5)
        T = new_dense(2, 2, 0.5 * (a + a.transpose(2, 3, 0, 1)))
        pairs = oracle.enumerate_2x2(T)
        lam_max = max(p.lam for p in pairs)
        assert all(abs(p.lam) <= lam_max + 1e-6 for p in pairs)


def test_rho_bounds_known_values(multi_mplus, cross):
    est = oracle.estimate_rho_bounds(multi_mplus)
    assert est.rho_star_lower == pytest.approx(10.5, abs=1e-4)
    assert est.rho_star_upper == pytest.approx(10.9075, abs=1e-4)
    est = oracle.estimate_rho_bounds(cross)
    assert est.rho_star_lower == pytest.approx(0.5, abs=1e-4)
    assert est.rho_star_upper == pytest.approx(0.5, abs=1e-4)


def test_positive_pairs_for_irreducible():
    for seed in range(10):
        T = bench.gen_random_symmetric_nbq(2, 2, seed)
        assert structure.irreducibility_report(T).irreducible
        for p in oracle.enumerate_2x2(T):
            if p.cls >= EigenClass.MPLUS:
                assert p.cls is EigenClass.MPLUSPLUS and p.lam > 0


def test_table_layout(multi_mplus):
    text = oracle.format_pairs_table(oracle.enumerate_2x2(multi_mplus))
    lines = text.splitlines()
    assert len(lines) == 9
    assert lines[1].split()[:2] == ["10.9075", "M++"]
