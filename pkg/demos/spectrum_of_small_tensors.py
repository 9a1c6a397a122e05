# Enumerating the M-spectrum of 2x2x2x2 tensors
#
# For m = n = 2 every unit vector is (cos t, sin t), so the eigenpairs are
# the stationary points of a smooth function on a torus.  The grid oracle
# finds all of them.

import numpy as np

from biquad import catalog, contraction, oracle

# A symmetric nonnegative tensor whose three largest eigenvalues all carry
# positive eigenvectors.

T = catalog.multi_mplus_tensor()
pairs = oracle.enumerate_2x2(T)
print(oracle.format_pairs_table(pairs))

# Each row is a genuine eigenpair: the residual of g = lam x, h = lam y is
# at round-off level, and the eigenvalue equals the form at (x, y).

for p in pairs[:3]:
    print(f"{p.lam:.6f}  residual {p.residual:.1e}  f(x, y) = {contraction.eval_f(T, p.x, p.y):.6f}")

# The summary gives the largest eigenvalue (which for a nonnegative tensor
# is also the spectral radius) and the smallest eigenvalue with a
# nonnegative eigenvector pair.

s = oracle.spectral_summary(pairs, T)
print("lambda_max", round(s.lambda_max, 4), " rho_M", round(s.rho_M, 4), " lambda+_min", s.lambda_plus_min)

# A second tensor has negative eigenvalues too, and only two of its
# eigenvalue levels admit nonnegative eigenvectors.

U = catalog.mixed_sign_tensor()
print(oracle.format_pairs_table(oracle.enumerate_2x2(U)))

# Diagonal tensors are the trivial case: every a[i, j, i, j] is an
# eigenvalue, attained at the unit vectors (e_i, e_j).

D = catalog.diagonal_tensor(np.array([[1.0, 2.0], [3.0, 4.0]]))
print([round(p.lam, 6) for p in oracle.enumerate_2x2(D)])

# Beyond 2x2 the multistart search is the tool.  It finds saddles as well
# as extrema, but it cannot prove that nothing was missed.

res = oracle.enumerate_small(catalog.diagonal_tensor(np.arange(1.0, 7.0).reshape(2, 3)), n_starts=200)
print(sorted({round(v, 8) for v in res.eigenvalues}), "exhaustive:", res.exhaustive)
