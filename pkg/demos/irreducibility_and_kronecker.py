# Irreducibility and Kronecker-structured tensors

import numpy as np

from biquad import catalog, collatz, kronecker, oracle, structure

# Irreducibility is decided slice by slice: every symmetrized slice must
# have a connected nonzero pattern.  Two independent methods are run and
# must agree.

for name, T in [("multi_mplus", catalog.multi_mplus_tensor()),
                ("cross_coupling", catalog.cross_coupling_tensor())]:
    print(name, structure.irreducibility_report(T).to_dict())

# The witness names an index block that no slice connects to the rest.

T = catalog.cross_coupling_tensor()
w = structure.irreducibility_report(T).witness
print(w, "holds:", w.holds(T))

# Repeated support propagation fills every coordinate after m - 1 steps on
# an irreducible tensor.

A = catalog.multi_mplus_tensor()
x, y = np.array([1.0, 0.0]), np.array([0.0, 1.0])
u, v = structure.propagate_support(A, x, y)
print("support", structure.support(x).indices, "->", structure.support(u).indices)

# A Kronecker tensor a[i, j, k, l] = B[i, k] C[j, l] has the form
# f = (x'Bx)(y'Cy); its nonzero eigenpairs are products of matrix ones.

B = np.array([[2.0, 1.0], [1.0, 2.0]])
C = np.array([[3.0, 1.0], [1.0, 3.0]])
K = kronecker.kron_build(B, C)
print("predicted", [p.lam for p in kronecker.factor_eigenpairs(B, C)])
print("oracle   ", [round(p.lam, 10) for p in oracle.enumerate_2x2(K)])

# With positive factors there is a single eigenvalue with a nonnegative
# eigenvector pair, the product of the two Perron roots, and both ratio
# bounds collapse onto it.

print("Perron product", kronecker.perron_pair(B)[0] * kronecker.perron_pair(C)[0])
print("Collatz       ", collatz.collatz_multistart(K, n_starts=20, seed=0).best.lambda_est)
est = oracle.estimate_rho_bounds(K)
print("bounds        ", est.rho_star_lower, est.rho_star_upper)
