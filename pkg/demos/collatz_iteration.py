# The Collatz iteration for the largest eigenvalue
#
# Starting from positive unit vectors, each step maps (x, y) to the
# normalized half-gradients (g, h).  The smallest and largest ratios
# g_i / x_i, h_j / y_j bracket the largest M+-eigenvalue.

import numpy as np

from biquad import catalog, collatz, oracle

T = catalog.multi_mplus_tensor()
cfg = collatz.CollatzConfig(record_trace=True)
res = collatz.collatz_run(T, [1.0, 0.2], [0.3, 1.0], cfg)

for k, (lo, hi) in list(enumerate(res.trace))[:: max(1, len(res.trace) // 8)]:
    print(f"{k:3d}  [{lo:.10f}, {hi:.10f}]")
print(res.status.value, "after", res.iterations, "steps, estimate", res.lambda_est)

# The stopping rule also fires when the bounds stop moving.  On this tensor
# that happens with a gap of about 2e-8, so the status reads stagnation
# rather than a closed gap.

print("final gap", res.gap)

# This tensor has more than one positive eigenvector pair.  The all-ones
# start is one of them, so the iteration stops at once on a smaller
# eigenvalue: the bounds are only guaranteed to enclose some M+ value.

fixed = collatz.collatz_run(T, np.ones(2), np.ones(2))
print("from (1, 1):", fixed.lambda_est, fixed.status.value, "after", fixed.iterations, "steps")

# The oracle agrees with the estimate.

print("oracle lambda_max", oracle.enumerate_2x2(T)[0].lam)

# Many random starts: every run lands on the same bounds.

ms = collatz.collatz_multistart(T, n_starts=100, seed=0)
print("mean iterations", ms.mean_iterations, " agreement", ms.agreement_ratio_lower, ms.agreement_ratio_upper)

# On a reducible tensor the iteration may stop at different eigenvalues
# depending on where it starts.

C = catalog.corner_tensor()
for x0, y0 in [([1.0, 1.0], [1.0, 1.0]), ([0.0, 1.0], [1.0, 1.0])]:
    r = collatz.collatz_run(C, x0, y0)
    print(x0, y0, "->", r.lambda_est, r.status.value)
