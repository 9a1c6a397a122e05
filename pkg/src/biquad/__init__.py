"""Spectral analysis of nonnegative biquadratic tensors.

Indices are 0-based throughout; a tensor entry written ``a_{1 1 2 1}`` in
1-based notation is ``entry(T, 0, 0, 1, 0)`` here.
"""

from .collatz import CollatzConfig, CollatzResult, Status, collatz_multistart, collatz_run
from .contraction import eval_f, grad_g, grad_h, ratio_bounds, residual
from .oracle import (
    EigenClass,
    MEigenpair,
    classify,
    enumerate_2x2,
    enumerate_small,
    estimate_rho_bounds,
    spectral_summary,
)
from .structure import irreducibility_report, propagate_support, support
from .tensor import (
    BiquadraticTensor,
    SymmetryClass,
    classify_symmetry,
    entry,
    identity_tensor,
    is_nonnegative,
    new_dense,
    slice_x,
    slice_y,
)

__all__ = [
    "BiquadraticTensor", "SymmetryClass", "new_dense", "entry", "classify_symmetry",
    "is_nonnegative", "identity_tensor", "slice_x", "slice_y",
    "eval_f", "grad_g", "grad_h", "ratio_bounds", "residual",
    "support", "propagate_support", "irreducibility_report",
    "CollatzConfig", "CollatzResult", "Status", "collatz_run", "collatz_multistart",
    "EigenClass", "MEigenpair", "classify", "enumerate_2x2", "enumerate_small",
    "estimate_rho_bounds", "spectral_summary",
]
