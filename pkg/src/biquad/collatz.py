"""Collatz iteration for the largest M+-eigenvalue of a nonnegative tensor.

Each step computes ``g = 1/2 grad_x f`` and ``h = 1/2 grad_y f`` at the
current unit pair, brackets the eigenvalue between the smallest and largest
of the ratios ``g_i/x_i`` and ``h_j/y_j`` taken over strictly positive
coordinates, and renormalizes ``(g, h)`` to get the next pair.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import contraction
from .errors import InvalidStartError, NotNonnegativeError
from .tensor import BiquadraticTensor, is_nonnegative


class Status(enum.Enum):
    CONVERGED_GAP = "ConvergedGap"
    CONVERGED_STAGNATION = "ConvergedStagnation"
    MAX_ITERATIONS = "MaxIterations"
    DEGENERATE_BREAKDOWN = "DegenerateBreakdown"

    @property
    def converged(self) -> bool:
        return self in (Status.CONVERGED_GAP, Status.CONVERGED_STAGNATION)


@dataclass(frozen=True)
class CollatzConfig:
    k_max: int = 1000
    epsilon: float = 1e-8
    record_trace: bool = False
    shift: float = 0.0

    def __post_init__(self):
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


@dataclass
class CollatzResult:
    status: Status
    lambda_lower: float
    lambda_upper: float
    x: np.ndarray
    y: np.ndarray
    iterations: int
    residual: float
    trace: Optional[list[tuple[float, float]]] = None

    @property
    def lambda_est(self) -> float:
        return 0.5 * (self.lambda_lower + self.lambda_upper)

    @property
    def gap(self) -> float:
        return self.lambda_upper - self.lambda_lower

    def to_dict(self, include_trace: bool = True) -> dict:
        d = {
            "status": self.status.value,
            "lambda_est": self.lambda_est,
            "lambda_lower": self.lambda_lower,
            "lambda_upper": self.lambda_upper,
            "iterations": self.iterations,
            "residual": self.residual,
            "x": self.x.tolist(),
            "y": self.y.tolist(),
        }
        if include_trace and self.trace is not None:
            d["trace"] = [list(t) for t in self.trace]
        return d


def _unit_start(v, size: int, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (size,):
        raise InvalidStartError(f"{name} must have length {size}, got shape {v.shape}")
    if not np.all(np.isfinite(v)) or np.any(v < 0):
        raise InvalidStartError(f"{name} must be finite and nonnegative")
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise InvalidStartError(f"{name} must be nonzero")
    return v / nrm


def _bounds(x, y, g, h) -> tuple[float, float]:
    r = np.concatenate([g[x > 0] / x[x > 0], h[y > 0] / y[y > 0]])
    if r.size == 0:
        return math.nan, math.nan
    return float(r.min()), float(r.max())


def collatz_run(
    T: BiquadraticTensor,
    x0,
    y0,
    cfg: CollatzConfig = CollatzConfig(),
    allow_general: bool = False,
) -> CollatzResult:
    """Run the Collatz iteration from ``(x0, y0)``.

    The loop stops at step k once
    ``min(|lo_k - hi_k|, |lo_k - lo_{k-1}| + |hi_k - hi_{k-1}|) <= epsilon``,
    with ``lo_{-1} = -1`` and ``hi_{-1} = inf``.  ``iterations`` is the value
    of k at exit.  A zero ``g`` or ``h`` ends the run with status
    ``DEGENERATE_BREAKDOWN``.  ``allow_general`` skips the nonnegativity
    check; the bounds then carry no guarantee, and an iterate with no
    positive coordinate also ends the run with ``DEGENERATE_BREAKDOWN``.
    """
    if not allow_general and not is_nonnegative(T):
        raise NotNonnegativeError("the Collatz iteration needs a nonnegative tensor")
    x = _unit_start(x0, T.m, "x0")
    y = _unit_start(y0, T.n, "y0")
    tau = cfg.shift
    lo_prev, hi_prev = -1.0, math.inf
    trace = [] if cfg.record_trace else None
    lo = hi = math.nan
    status = Status.MAX_ITERATIONS
    k = 0
    for k in range(cfg.k_max + 1):
        g = contraction.grad_g(T, x, y) + tau * x
        h = contraction.grad_h(T, x, y) + tau * y
        b = _bounds(x, y, g, h)
        if math.isnan(b[0]):
            # a general tensor pushed the iterate out of the nonnegative
            # orthant; keep the last bounds
            status = Status.DEGENERATE_BREAKDOWN
            break
        lo, hi = b[0] - tau, b[1] - tau
        if trace is not None:
            trace.append((lo, hi))
        gap = abs(lo - hi)
        stagnation = abs(lo - lo_prev) + abs(hi - hi_prev)
        if gap <= cfg.epsilon:
            status = Status.CONVERGED_GAP
            break
        if stagnation <= cfg.epsilon:
            status = Status.CONVERGED_STAGNATION
            break
        gn, hn = np.linalg.norm(g), np.linalg.norm(h)
        if gn == 0 or hn == 0:
            status = Status.DEGENERATE_BREAKDOWN
            break
        if k == cfg.k_max:
            break
        x, y = g / gn, h / hn
        lo_prev, hi_prev = lo, hi
    lam = 0.5 * (lo + hi)
    return CollatzResult(
        status, lo, hi, x, y, k, contraction.residual(T, lam, x, y), trace
    )


def random_start(rng: np.random.Generator, m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Uniform(0, 1) entries, normalized to unit 2-norm."""
    x = rng.uniform(0.0, 1.0, m)
    y = rng.uniform(0.0, 1.0, n)
    return x / np.linalg.norm(x), y / np.linalg.norm(y)


def max_workers() -> int:
    """Thread cap from the ``BIQUAD_THREADS`` environment variable (default 1)."""
    try:
        return max(1, int(os.environ.get("BIQUAD_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class MultistartResult:
    best: CollatzResult
    per_start: list[CollatzResult] = field(repr=False)
    agreement_ratio_lower: float
    agreement_ratio_upper: float

    @property
    def mean_iterations(self) -> float:
        return float(np.mean([r.iterations for r in self.per_start]))

    def to_dict(self) -> dict:
        return {
            "best": self.best.to_dict(include_trace=False),
            "n_starts": len(self.per_start),
            "mean_iterations": self.mean_iterations,
            "agreement_ratio_lower": self.agreement_ratio_lower,
            "agreement_ratio_upper": self.agreement_ratio_upper,
            "statuses": {
                s.value: sum(r.status is s for r in self.per_start) for s in Status
            },
        }


def collatz_multistart(
    T: BiquadraticTensor,
    cfg: CollatzConfig = CollatzConfig(),
    n_starts: int = 100,
    seed: int = 0,
    agree_tol: float = 1e-6,
    allow_general: bool = False,
) -> MultistartResult:
    """Run :func:`collatz_run` from ``n_starts`` random positive starts.

    Start ``k`` draws from its own stream ``SeedSequence(seed).spawn(...)[k]``
    so results do not depend on scheduling.
    """
    if n_starts < 1:
        raise ValueError("n_starts must be >= 1")
    streams = np.random.SeedSequence(seed).spawn(n_starts)

    def one(ss):
        x0, y0 = random_start(np.random.default_rng(ss), T.m, T.n)
        return collatz_run(T, x0, y0, cfg, allow_general)

    workers = max_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(one, streams))
    else:
        results = [one(ss) for ss in streams]
    best = max(results, key=lambda r: r.lambda_est)
    rho = best.lambda_est
    lower = float(np.mean([abs(r.lambda_lower - rho) <= agree_tol for r in results]))
    upper = float(np.mean([abs(r.lambda_upper - rho) <= agree_tol for r in results]))
    return MultistartResult(best, results, lower, upper)
