"""Random instances and repeated Collatz runs with aggregated statistics."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .collatz import CollatzConfig, CollatzResult, Status, collatz_run, random_start
from .errors import BiquadError
from .tensor import BiquadraticTensor, new_dense, weak_partner, x_swap, y_swap

CSV_HEADER = ["m", "n", "iter", "time_s", "gap", "res", "ratio_lower", "ratio_upper"]


def gen_random_symmetric_nbq(m: int, n: int, seed: int) -> BiquadraticTensor:
    """Uniform(0, 1) entries averaged over the symmetry orbit of each index."""
    rng = np.random.default_rng(seed)
    a = rng.uniform(0.0, 1.0, size=(m, n, m, n))
    a = 0.25 * (a + weak_partner(a) + x_swap(a) + y_swap(a))
    return new_dense(m, n, a)


@dataclass(frozen=True)
class BenchConfig:
    m: int
    n: int
    repeats: int = 100
    seed: int = 0
    collatz: CollatzConfig = field(default_factory=CollatzConfig)
    mode: str = "fixed-tensor"
    tensor: Optional[BiquadraticTensor] = None
    agree_tol: float = 1e-6

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.mode not in ("fixed-tensor", "fresh-tensor"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.tensor is not None and (self.tensor.m, self.tensor.n) != (self.m, self.n):
            raise ValueError("tensor dimensions do not match m, n")


@dataclass
class BenchReport:
    m: int
    n: int
    mode: str
    repeats: int
    mean_iterations: float
    mean_time_seconds: float
    mean_gap: float
    mean_residual: float
    ratio_lower: float
    ratio_upper: float
    rho_M_observed: float
    max_iterations_hits: int
    failures: int
    runs: list[CollatzResult] = field(repr=False, default_factory=list)

    def csv_row(self) -> list:
        return [self.m, self.n, f"{self.mean_iterations:.2f}", f"{self.mean_time_seconds:.2e}",
                f"{self.mean_gap:.2e}", f"{self.mean_residual:.2e}",
                f"{self.ratio_lower:.2f}", f"{self.ratio_upper:.2f}"]

    def to_dict(self) -> dict:
        return {
            "m": self.m, "n": self.n, "mode": self.mode, "repeats": self.repeats,
            "mean_iterations": self.mean_iterations,
            "mean_time_seconds": self.mean_time_seconds,
            "mean_gap": self.mean_gap, "mean_residual": self.mean_residual,
            "ratio_lower": self.ratio_lower, "ratio_upper": self.ratio_upper,
            "rho_M_observed": self.rho_M_observed,
            "max_iterations_hits": self.max_iterations_hits,
            "failures": self.failures,
        }


def run_experiment(cfg: BenchConfig) -> BenchReport:
    """Repeat the Collatz iteration ``cfg.repeats`` times.

    In ``fixed-tensor`` mode one tensor (``cfg.tensor`` or a generated one)
    is reused with fresh random starts; in ``fresh-tensor`` mode each repeat
    draws its own tensor.  Agreement ratios count repeats whose final lower
    (upper) bound lies within ``agree_tol`` of the largest estimate seen.
    Solver errors are counted, not raised.
    """
    seqs = np.random.SeedSequence(cfg.seed).spawn(cfg.repeats + 1)
    fixed = cfg.tensor
    if fixed is None and cfg.mode == "fixed-tensor":
        fixed = gen_random_symmetric_nbq(cfg.m, cfg.n, int(seqs[-1].generate_state(1)[0]))
    runs, times, failures = [], [], 0
    for k in range(cfg.repeats):
        tensor_seed, start_seq = seqs[k].spawn(2)
        T = fixed if cfg.mode == "fixed-tensor" else gen_random_symmetric_nbq(
            cfg.m, cfg.n, int(tensor_seed.generate_state(1)[0]))
        x0, y0 = random_start(np.random.default_rng(start_seq), cfg.m, cfg.n)
        t0 = time.perf_counter()
        try:
            res = collatz_run(T, x0, y0, cfg.collatz)
        except BiquadError:
            failures += 1
            continue
        times.append(time.perf_counter() - t0)
        if res.status is Status.DEGENERATE_BREAKDOWN:
            failures += 1
        runs.append(res)
    if not runs:
        raise BiquadError("every repeat failed")
    rho = max(r.lambda_est for r in runs)
    return BenchReport(
        m=cfg.m, n=cfg.n, mode=cfg.mode, repeats=cfg.repeats,
        mean_iterations=float(np.mean([r.iterations for r in runs])),
        mean_time_seconds=float(np.mean(times)),
        mean_gap=float(np.mean([r.gap for r in runs])),
        mean_residual=float(np.mean([r.residual for r in runs])),
        ratio_lower=float(np.mean([abs(r.lambda_lower - rho) <= cfg.agree_tol for r in runs])),
        ratio_upper=float(np.mean([abs(r.lambda_upper - rho) <= cfg.agree_tol for r in runs])),
        rho_M_observed=rho,
        max_iterations_hits=sum(r.status is Status.MAX_ITERATIONS for r in runs),
        failures=failures,
        runs=runs,
    )


def reports_to_csv(reports: list[BenchReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def format_table(reports: list[BenchReport]) -> str:
    head = f"{'m':>4} {'n':>4} {'rho_M':>10} {'Iter':>7} {'Time (s)':>9} {'gap':>9} {'Res':>9} {'r_lo':>5} {'r_up':>5}"
    lines = [head, "-" * len(head)]
    for r in reports:
        lines.append(
            f"{r.m:>4} {r.n:>4} {r.rho_M_observed:>10.4f} {r.mean_iterations:>7.2f} "
            f"{r.mean_time_seconds:>9.2e} {r.mean_gap:>9.2e} {r.mean_residual:>9.2e} "
            f"{100 * r.ratio_lower:>4.0f}% {100 * r.ratio_upper:>4.0f}%"
        )
    return "\n".join(lines)
