"""Brute-force M-eigenpair enumeration and spectral summaries.

M-eigenpairs are the stationary points of ``f(x, y)`` on the product of unit
spheres, with the eigenvalue equal to ``f`` there.  The routines here only
use ``f`` and its derivatives through a private symmetrized copy of the
tensor, so they can be checked against the solver in :mod:`biquad.collatz`.

``enumerate_2x2`` is a grid scan plus Newton refinement over the angle
torus and is the authoritative path for m = n = 2.  ``enumerate_small`` is a
best-effort multistart search for slightly larger sizes.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy import optimize
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from . import contraction
from .errors import BiquadError, DimensionMismatchError, InternalConsistencyError
from .tensor import BiquadraticTensor, is_nonnegative, weak_partner, x_swap, y_swap

log = logging.getLogger(__name__)

SIGN_TOL = 1e-8


class EigenClass(enum.IntEnum):
    M = 0
    MPLUS = 1
    MPLUSPLUS = 2

    @property
    def label(self) -> str:
        return {0: "M", 1: "M+", 2: "M++"}[int(self)]


@dataclass(frozen=True)
class MEigenpair:
    lam: float
    x: np.ndarray
    y: np.ndarray
    cls: EigenClass = EigenClass.M
    residual: float = 0.0
    isolated: bool = True

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "x": self.x.tolist(),
            "y": self.y.tolist(),
            "class": self.cls.label,
            "residual": self.residual,
            "isolated": self.isolated,
        }


# -- derivatives of the form -------------------------------------------------

def _form_tensor(T: BiquadraticTensor) -> np.ndarray:
    """Part of the tensor that the form f sees: symmetric under i1<->i2 and
    j1<->j2 separately."""
    a = T.data
    return 0.25 * (a + x_swap(a) + y_swap(a) + weak_partner(a))


def _form_derivatives(S, x, y):
    """Gradient and Hessian blocks of f at (x, y), batched over leading axes."""
    gx = 2.0 * np.einsum("pjkl,...j,...k,...l->...p", S, y, x, y)
    gy = 2.0 * np.einsum("ijkr,...i,...j,...k->...r", S, x, y, x)
    hxx = 2.0 * np.einsum("pjql,...j,...l->...pq", S, y, y)
    hyy = 2.0 * np.einsum("irks,...i,...k->...rs", S, x, x)
    hxy = 4.0 * np.einsum("prkl,...k,...l->...pr", S, x, y)
    return gx, gy, hxx, hyy, hxy


def _eval_form(S, x, y):
    return np.einsum("ijkl,...i,...j,...k,...l->...", S, x, y, x, y)


# -- canonical form and classification ----------------------------------------

def _canonical_vector(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))  # argmax picks the lowest index on ties
    return -v if v[k] < 0 else v


def canonicalize(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Flip signs so the largest-magnitude entry of x, then of y, is positive."""
    return _canonical_vector(np.asarray(x, float)), _canonical_vector(np.asarray(y, float))


def _sign_reps(x, y):
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            yield sx * x, sy * y


def classify(pair: MEigenpair, T: Optional[BiquadraticTensor] = None) -> MEigenpair:
    """Set the class of ``pair`` from its four sign-flip representatives.

    When a nonnegative representative exists it replaces the stored vectors.
    """
    best = (EigenClass.M, pair.x, pair.y)
    for xs, ys in _sign_reps(pair.x, pair.y):
        if np.all(xs >= -SIGN_TOL) and np.all(ys >= -SIGN_TOL):
            cls = EigenClass.MPLUSPLUS if (np.all(xs > SIGN_TOL) and np.all(ys > SIGN_TOL)) else EigenClass.MPLUS
            if cls > best[0]:
                best = (cls, xs, ys)
    cls, x, y = best
    if T is not None and cls >= EigenClass.MPLUS and is_nonnegative(T) and pair.lam < -SIGN_TOL:
        raise InternalConsistencyError(
            f"M+ eigenvalue {pair.lam} of a nonnegative tensor is negative"
        )
    return replace(pair, x=x, y=y, cls=cls)


SNAP_TOL = 1e-6


def _snap(v):
    v = np.where(np.abs(v) <= SNAP_TOL, 0.0, v) + 0.0
    return v / np.linalg.norm(v)


def _make_pair(T, lam, x, y, isolated=True) -> MEigenpair:
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    res = contraction.residual(T, lam, x, y)
    # exact zeros matter for the M+/M++ distinction; keep a snapped copy
    # whenever it is at least as good an eigenpair
    xs, ys = _snap(x), _snap(y)
    res_s = contraction.residual(T, lam, xs, ys)
    if res_s <= max(res, 1e-12 * max(T.max_abs(), 1.0)):
        x, y, res = xs, ys, res_s
    x, y = canonicalize(x, y)
    return classify(MEigenpair(float(lam), x, y, EigenClass.M, res, isolated), T)


def _sort_pairs(pairs):
    return sorted(pairs, key=lambda p: (-p.lam, tuple(-p.x), tuple(-p.y)))


def _merge_degenerate(T, roots, scale):
    """One representative per eigenvalue level among non-isolated roots.

    The highest class found on the level wins, ties go to the first pair in
    canonical order.
    """
    out = []
    if not roots:
        return out
    roots = sorted(roots, key=lambda r: r[0])
    groups = [[roots[0]]]
    for r in roots[1:]:
        if r[0] - groups[-1][-1][0] <= 1e-8 * scale:
            groups[-1].append(r)
        else:
            groups.append([r])
    for grp in groups:
        lam = float(np.mean([r[0] for r in grp]))
        cands = [_make_pair(T, lam, r[1], r[2], isolated=False) for r in grp[:2000]]
        top = max(c.cls for c in cands)
        out.append(_sort_pairs([c for c in cands if c.cls == top])[0])
    return out


# -- 2 x 2 grid oracle ----------------------------------------------------------

def _torus_fields(S, th, ph):
    x = np.stack([np.cos(th), np.sin(th)], axis=-1)
    y = np.stack([np.cos(ph), np.sin(ph)], axis=-1)
    xp = np.stack([-np.sin(th), np.cos(th)], axis=-1)
    yp = np.stack([-np.sin(ph), np.cos(ph)], axis=-1)
    gx, gy, hxx, hyy, hxy = _form_derivatives(S, x, y)
    Ft = np.sum(gx * xp, axis=-1)
    Fp = np.sum(gy * yp, axis=-1)
    Ftt = np.einsum("...p,...pq,...q->...", xp, hxx, xp) - np.sum(gx * x, axis=-1)
    Fpp = np.einsum("...r,...rs,...s->...", yp, hyy, yp) - np.sum(gy * y, axis=-1)
    Ftp = np.einsum("...p,...pr,...r->...", xp, hxy, yp)
    return x, y, Ft, Fp, Ftt, Fpp, Ftp


def _grid_fields(S, ang):
    # S is invariant under both index swaps, so on the full grid
    # F = (x (x) x) S (y (x) y)' and each partial is twice the same product
    # with one factor replaced by its derivative
    c, s = np.cos(ang), np.sin(ang)
    v = np.stack([c, s], axis=-1)
    dv = np.stack([-s, c], axis=-1)
    S2 = S.transpose(0, 2, 1, 3).reshape(4, 4)
    vv = np.einsum("ap,aq->apq", v, v).reshape(-1, 4)
    dvv = np.einsum("ap,aq->apq", dv, v).reshape(-1, 4)
    F = vv @ S2 @ vv.T
    Ft = 2.0 * dvv @ S2 @ vv.T
    Fp = 2.0 * vv @ S2 @ dvv.T
    return F, Ft, Fp


def enumerate_2x2(
    T: BiquadraticTensor,
    grid: int = 720,
    tol: float = 1e-10,
    newton_tol: float = 1e-12,
    newton_steps: int = 50,
    dedup_radius: float = 1e-6,
) -> list[MEigenpair]:
    """All M-eigenpairs of a 2x2x2x2 tensor, found on the angle torus.

    With ``x = (cos t, sin t)`` and ``y = (cos p, sin p)`` for ``t, p`` in
    ``[0, pi)``, eigenpairs are the stationary points of ``F(t, p) = f(x, y)``.
    Every grid cell in which both partial derivatives change sign seeds a
    Newton solve of ``grad F = 0``; roots closer than ``dedup_radius`` are
    merged.  Stationary points lying on a continuum (singular Hessian) are
    reported once per eigenvalue with ``isolated=False``.
    """
    if T.m != 2 or T.n != 2:
        raise DimensionMismatchError(f"enumerate_2x2 needs m = n = 2, got {T.m} x {T.n}")
    S = _form_tensor(T)
    scale = max(T.max_abs(), 1e-300)
    pi = np.pi

    ang = np.arange(grid) * (pi / grid)
    Fg, Ft, Fp = _grid_fields(S, ang)
    if np.ptp(Fg) <= 1e-13 * scale:
        # constant form: every unit pair is stationary
        c = float(Fg.mean())
        return [_make_pair(T, c, np.array([1.0, 0.0]), np.array([1.0, 0.0]), isolated=False)]

    def corners(F):
        c = np.stack([F, np.roll(F, -1, 0), np.roll(F, -1, 1), np.roll(np.roll(F, -1, 0), -1, 1)])
        return c.min(axis=0), c.max(axis=0)

    thr = 1e-13 * scale
    lo_t, hi_t = corners(Ft)
    lo_p, hi_p = corners(Fp)
    mask = (lo_t <= thr) & (hi_t >= -thr) & (lo_p <= thr) & (hi_p >= -thr)
    ci, cj = np.nonzero(mask)
    th = (ci + 0.5) * (pi / grid)
    ph = (cj + 0.5) * (pi / grid)

    # Newton keeps stepping after the gradient test passes until the step
    # itself is negligible: on flat directions a small gradient does not mean
    # the point is close to the stationary set
    active = np.ones(th.shape, dtype=bool)
    cap = 8 * pi / grid
    for _ in range(newton_steps):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        _, _, Ft, Fp, Ftt, Fpp, Ftp = _torus_fields(S, th[idx], ph[idx])
        grad = np.stack([Ft, Fp], axis=-1)
        H = np.stack([np.stack([Ftt, Ftp], -1), np.stack([Ftp, Fpp], -1)], -2)
        step = np.einsum("...ij,...j->...i", np.linalg.pinv(H, rcond=1e-12), grad)
        big = np.max(np.abs(step), axis=-1)
        step = np.where((big > cap)[:, None], step * (cap / np.maximum(big, 1e-300))[:, None], step)
        th[idx] -= step[:, 0]
        ph[idx] -= step[:, 1]
        active[idx[big <= 1e-15]] = False
    _, _, Ft, Fp, *_ = _torus_fields(S, th, ph)
    converged = np.maximum(np.abs(Ft), np.abs(Fp)) <= newton_tol * scale
    if not converged.all():
        log.info("enumerate_2x2: %d of %d Newton seeds did not converge",
                 int((~converged).sum()), converged.size)
    th, ph = np.mod(th[converged], pi), np.mod(ph[converged], pi)
    if th.size == 0:
        return []

    x, y, Ft, Fp, Ftt, Fpp, Ftp = _torus_fields(S, th, ph)
    F = _eval_form(S, x, y)
    det = Ftt * Fpp - Ftp ** 2
    hess_scale = np.maximum(np.abs(Ftt) + np.abs(Fpp) + np.abs(Ftp), scale)
    singular = np.abs(det) <= 1e-8 * hess_scale ** 2

    pairs = []
    iso = np.flatnonzero(~singular)
    if iso.size:
        pts = np.mod(np.stack([th[iso], ph[iso]], axis=-1), pi)
        pts = np.where(pts >= pi, 0.0, pts)
        tree = cKDTree(pts, boxsize=pi)
        links = tree.query_pairs(dedup_radius, output_type="ndarray")
        k = iso.size
        adj = coo_matrix((np.ones(len(links)), (links[:, 0], links[:, 1])), shape=(k, k)) if len(links) else coo_matrix((k, k))
        _, labels = connected_components(adj, directed=False)
        for lab in np.unique(labels):
            r = iso[np.flatnonzero(labels == lab)[0]]
            pairs.append(_make_pair(T, F[r], x[r], y[r]))
    deg = np.flatnonzero(singular)
    pairs += _merge_degenerate(T, [(F[r], x[r], y[r]) for r in deg], scale)
    pairs = [p for p in pairs if p.residual <= max(tol, 10 * newton_tol) * max(scale, 1.0)]
    return _sort_pairs(pairs)


# -- multistart search for small sizes -------------------------------------------

@dataclass
class SmallEnumeration:
    """Result of :func:`enumerate_small`; never claimed to be exhaustive."""

    pairs: list[MEigenpair]
    n_starts: int
    n_dropped: int
    exhaustive: bool = field(default=False, init=False)

    @property
    def eigenvalues(self) -> list[float]:
        return [p.lam for p in self.pairs]


def _tangent_hessian(S, x, y, lam):
    m, n = x.size, y.size
    _, _, hxx, hyy, hxy = _form_derivatives(S, x, y)
    H = np.block([[hxx - 2 * lam * np.eye(m), hxy], [hxy.T, hyy - 2 * lam * np.eye(n)]])
    qx = np.linalg.svd(x[None, :])[2][1:].T
    qy = np.linalg.svd(y[None, :])[2][1:].T
    Q = np.block([[qx, np.zeros((m, n - 1))], [np.zeros((n, m - 1)), qy]])
    return Q.T @ H @ Q


def _same_pair(p: MEigenpair, q: MEigenpair, vec_tol: float) -> bool:
    for xs, ys in _sign_reps(q.x, q.y):
        if max(np.max(np.abs(p.x - xs)), np.max(np.abs(p.y - ys))) <= vec_tol:
            return True
    return False


def enumerate_small(
    T: BiquadraticTensor, n_starts: int = 500, tol: float = 1e-10, seed: int = 0
) -> SmallEnumeration:
    """Multistart search for stationary points of f on the sphere product.

    Each start (Gaussian direction, so every orthant is sampled) is driven to
    a zero of the projected gradient ``(g - f x, h - f y)`` by a
    Levenberg-Marquardt solve; saddles are found as readily as extrema.
    Starts that do not reach ``tol`` are dropped and counted.
    """
    m, n = T.m, T.n
    if m * n > 36:
        raise DimensionMismatchError(f"enumerate_small needs m*n <= 36, got {m * n}")
    S = _form_tensor(T)
    scale = max(T.max_abs(), 1e-300)
    rng = np.random.default_rng(seed)

    def resid(z):
        x, y = z[:m], z[m:]
        nx, ny = np.linalg.norm(x), np.linalg.norm(y)
        xh, yh = x / nx, y / ny
        gx, gy, *_ = _form_derivatives(S, xh, yh)
        f = 0.5 * gx @ xh
        return np.concatenate([0.5 * gx - f * xh, 0.5 * gy - f * yh, [nx - 1.0, ny - 1.0]]) / scale

    isolated, degenerate, dropped = [], [], 0
    for _ in range(n_starts):
        z0 = rng.standard_normal(m + n)
        try:
            sol = optimize.least_squares(resid, z0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        except (ValueError, np.linalg.LinAlgError, FloatingPointError):
            dropped += 1
            continue
        x, y = sol.x[:m], sol.x[m:]
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))) or not np.any(x) or not np.any(y):
            dropped += 1
            continue
        x, y = x / np.linalg.norm(x), y / np.linalg.norm(y)
        lam = float(_eval_form(S, x, y))
        gx, gy, *_ = _form_derivatives(S, x, y)
        stat = max(np.max(np.abs(0.5 * gx - lam * x)), np.max(np.abs(0.5 * gy - lam * y)))
        if stat > tol * max(scale, 1.0):
            dropped += 1
            continue
        H = _tangent_hessian(S, x, y, lam)
        sv = np.linalg.svd(H, compute_uv=False)
        if sv.size and sv.min() <= 1e-7 * max(sv.max(), scale):
            degenerate.append((lam, x, y))
            continue
        cand = _make_pair(T, lam, x, y)
        if not any(abs(p.lam - cand.lam) <= 1e-6 * max(scale, 1.0) and _same_pair(p, cand, 1e-5)
                   for p in isolated):
            isolated.append(cand)
    pairs = isolated + _merge_degenerate(T, degenerate, scale)
    return SmallEnumeration(_sort_pairs(pairs), n_starts, dropped)


def enumerate_pairs(T: BiquadraticTensor, **kw) -> list[MEigenpair]:
    """Exhaustive grid oracle for 2 x 2 tensors, multistart search otherwise."""
    if T.m == 2 and T.n == 2:
        return enumerate_2x2(T, **{k: v for k, v in kw.items() if k in ("grid", "tol")})
    kw = {k: v for k, v in kw.items() if k in ("n_starts", "tol", "seed")}
    return enumerate_small(T, **kw).pairs


# -- summaries ---------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralSummary:
    lambda_max: float
    rho_M: float
    lambda_plus_min: Optional[float]
    eigenvalues: list[float]
    mplus_set: list[MEigenpair]

    def to_dict(self) -> dict:
        return {
            "lambda_max": self.lambda_max,
            "rho_M": self.rho_M,
            "lambda_plus_min": self.lambda_plus_min,
            "eigenvalues": self.eigenvalues,
            "mplus": [p.to_dict() for p in self.mplus_set],
        }


def spectral_summary(pairs: list[MEigenpair], T: BiquadraticTensor, tol: float = 1e-8) -> SpectralSummary:
    """Largest eigenvalue, spectral radius and smallest M+ eigenvalue.

    For a nonnegative tensor the radius must equal the largest eigenvalue and
    the largest eigenvalue must carry a nonnegative eigenvector pair; a
    violation raises :class:`InternalConsistencyError`.
    """
    if not pairs:
        raise BiquadError("spectral_summary needs at least one eigenpair")
    lams = sorted((p.lam for p in pairs), reverse=True)
    lam_max = lams[0]
    rho = max(abs(v) for v in lams)
    mplus = [p for p in _sort_pairs(pairs) if p.cls >= EigenClass.MPLUS]
    lam_plus_min = min(p.lam for p in mplus) if mplus else None
    if is_nonnegative(T):
        slack = tol * max(T.max_abs(), 1.0)
        if rho - lam_max > slack:
            raise InternalConsistencyError(f"spectral radius {rho} exceeds largest eigenvalue {lam_max}")
        if not any(p.lam >= lam_max - slack for p in mplus):
            raise InternalConsistencyError("largest eigenvalue has no nonnegative eigenvector pair")
    return SpectralSummary(lam_max, rho, lam_plus_min, lams, mplus)


def format_pairs_table(pairs: list[MEigenpair], digits: int = 4) -> str:
    """Plain-text listing: eigenvalue, class, x^T and y^T per row."""
    def vec(v):
        return "(" + ", ".join(f"{c: .{digits}f}" for c in v) + ")"

    rows = [f"{'lambda':>10}  {'class':<5}  x^T / y^T"]
    for p in pairs:
        rows.append(f"{p.lam:>10.{digits}f}  {p.cls.label:<5}  x = {vec(p.x)}  y = {vec(p.y)}")
    return "\n".join(rows)


# -- Collatz-Wielandt type bounds ------------------------------------------------

@dataclass(frozen=True)
class RhoEstimates:
    """Estimates of ``inf u`` (lower) and ``sup v`` (upper) over positive unit pairs."""

    rho_star_lower: float
    rho_star_upper: float
    arg_lower: tuple[np.ndarray, np.ndarray]
    arg_upper: tuple[np.ndarray, np.ndarray]

    def to_dict(self) -> dict:
        return {
            "rho_lower": self.rho_star_lower,
            "rho_upper": self.rho_star_upper,
            "arg_lower": [self.arg_lower[0].tolist(), self.arg_lower[1].tolist()],
            "arg_upper": [self.arg_upper[0].tolist(), self.arg_upper[1].tolist()],
        }


def _positive_pair(z, m):
    # exp-coordinates keep every iterate strictly positive
    zx, zy = z[:m], z[m:]
    x = np.exp(zx - zx.max())
    y = np.exp(zy - zy.max())
    return x / np.linalg.norm(x), y / np.linalg.norm(y)


def estimate_rho_bounds(
    T: BiquadraticTensor, n_starts: int = 200, seed: int = 0, n_refine: int = 8
) -> RhoEstimates:
    """Minimize ``u`` and maximize ``v`` over strictly positive unit pairs.

    Random starts are screened, the best ``n_refine`` are refined by
    Nelder-Mead (``u`` and ``v`` are only piecewise smooth), and the winner
    is polished with an epigraph formulation solved by SLSQP.
    """
    m = T.m
    rng = np.random.default_rng(seed)

    def all_ratios(z):
        x, y = _positive_pair(z, m)
        rx, ry = contraction.ratios(T, x, y)
        return np.concatenate([rx, ry])

    def u(z):
        return float(np.max(all_ratios(z)))

    def neg_v(z):
        return -float(np.min(all_ratios(z)))

    starts = rng.normal(0.0, 1.5, size=(n_starts, m + T.n))
    results = []
    for obj, sign in ((u, 1.0), (neg_v, -1.0)):
        vals = np.array([obj(z) for z in starts])
        order = np.argsort(vals)[:n_refine]
        best_z, best_val = None, np.inf
        for idx in order:
            sol = optimize.minimize(obj, starts[idx], method="Nelder-Mead",
                                    options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 4000})
            if sol.fun < best_val:
                best_z, best_val = sol.x, sol.fun
        best_z, best_val = _epigraph_polish(all_ratios, best_z, best_val, sign)
        results.append((sign * best_val, _positive_pair(best_z, m)))
    (lo, arg_lo), (hi, arg_hi) = results
    return RhoEstimates(lo, hi, arg_lo, arg_hi)


def _epigraph_polish(all_ratios, z0, val0, sign):
    """min t s.t. ratios <= t (sign=+1), or max t s.t. ratios >= t (sign=-1)."""
    w0 = np.append(z0, sign * val0)
    if sign > 0:
        cons = {"type": "ineq", "fun": lambda w: w[-1] - all_ratios(w[:-1])}
        obj = lambda w: w[-1]  # noqa: E731
    else:
        cons = {"type": "ineq", "fun": lambda w: all_ratios(w[:-1]) - w[-1]}
        obj = lambda w: -w[-1]  # noqa: E731
    try:
        sol = optimize.minimize(obj, w0, method="SLSQP", constraints=[cons],
                                options={"ftol": 1e-14, "maxiter": 500})
    except (ValueError, FloatingPointError):
        return z0, val0
    z = sol.x[:-1]
    if not np.all(np.isfinite(z)):
        return z0, val0
    r = all_ratios(z)
    val = float(np.max(r)) if sign > 0 else -float(np.min(r))
    return (z, val) if val < val0 else (z0, val0)
