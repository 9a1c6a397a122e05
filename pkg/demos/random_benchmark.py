# Collatz iteration on random symmetric nonnegative tensors
#
# Entries are drawn from U(0, 1) and averaged over their symmetry orbit.
# In the default fixed-tensor mode one tensor is reused with fresh random
# starts, so the agreement ratios compare against a single largest value.

from biquad import bench

reports = [
    bench.run_experiment(bench.BenchConfig(m, n, repeats=20, seed=0))
    for m, n in [(10, 10), (10, 50), (30, 10), (20, 20)]
]
print(bench.format_table(reports))
print()
print(bench.reports_to_csv(reports))

# In fresh-tensor mode every repeat draws a new tensor; agreement ratios
# then measure something else and are mostly below one.

print(bench.format_table([bench.run_experiment(bench.BenchConfig(10, 10, repeats=20, seed=0, mode="fresh-tensor"))]))
