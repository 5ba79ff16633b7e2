"""Duality transforms: the s-polar transform, the Legendre transform, the
log-polar transform, the s-concave approximation of a log-concave function,
and convergence studies between the two dualities.

Shift convention used throughout: shift(f, z)(x) = f(x + z), which moves the
point z of the original function to the origin.  With this convention
L_s(shift(f, z))(y) = inf over supp f of ((1 + <z,y>) - <x,y>)_+^s / f(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import optimize

from . import funcmodel
from .errors import InputError, NumericError

__all__ = [
    "s_polar",
    "s_polar_batch",
    "SPolarEvaluator",
    "LegendreEvaluator",
    "LegendreValue",
    "legendre",
    "legendre_evaluator",
    "log_polar",
    "log_polar_batch",
    "s_approx",
    "convergence_study",
]


# ---------------------------------------------------------------------------
# s-polar transform


def _zoom_min(numer_fn, lo, hi, stages=3, m=65):
    """Vectorized min over rho in [lo, hi] of a per-row family of 1d
    functions; lo/hi are arrays (one interval per row)."""
    lo = lo.copy()
    hi = hi.copy()
    best = np.full(len(lo), np.inf)
    for stage in range(stages):
        k = m if stage == 0 else 33
        t = np.linspace(0.0, 1.0, k)
        rho = lo[:, None] + (hi - lo)[:, None] * t[None, :]
        vals = numer_fn(rho)
        idx = np.argmin(vals, axis=1)
        rows = np.arange(len(lo))
        best = np.minimum(best, vals[rows, idx])
        step = (hi - lo) / (k - 1)
        center = rho[rows, idx]
        lo = np.maximum(lo, center - step)
        hi = np.minimum(hi + 0 * step, center + step)
    return best


def s_polar_batch(spec: funcmodel.FunctionSpec, s: float, Y: np.ndarray,
                  center=None) -> np.ndarray:
    """L_s(shift(spec, center)) evaluated at the rows of Y."""
    if not s > 0:
        raise InputError("s must be positive")
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    d = spec.dimension
    if Y.shape[1] != d:
        raise InputError("points must have shape (n, d)")
    z = np.zeros(d) if center is None else np.asarray(center, dtype=float)
    c0 = 1.0 + Y @ z

    if funcmodel.is_indicator(spec):
        h = funcmodel.supp_support_function(spec, Y)
        return np.maximum(0.0, c0 - h) ** s

    ri = funcmodel.radial_info(spec)
    if ri is not None:
        return _s_polar_radial(ri, s, Y, c0)

    fam = spec.family
    if isinstance(fam, funcmodel.GridProfile) and not spec.is_log_concave:
        return _s_polar_grid(spec, s, Y, c0)

    return _s_polar_generic(spec, s, Y, c0)


def _s_polar_radial(ri: funcmodel.RadialInfo, s, Y, c0):
    q = np.linalg.norm(Y, axis=1)
    A = c0 - Y @ ri.center
    out = np.zeros(len(Y))
    sup = float(np.max(ri.f_rad(np.array([0.0]))))  # profiles peak at center
    if not np.isfinite(ri.radius):
        # full support: the numerator vanishes inside supp f for any y != 0
        at0 = q == 0
        out[at0] = np.maximum(0.0, c0[at0]) ** s / sup
        return out
    R = ri.radius
    live = A > q * R  # otherwise the numerator hits 0 inside the support
    at0 = live & (q == 0)
    out[at0] = np.maximum(0.0, A[at0]) ** s / sup
    rows = np.nonzero(live & (q > 0))[0]
    if len(rows):
        Ar = A[rows]
        qr = q[rows]

        def ratio(rho):
            numer = np.maximum(0.0, Ar[:, None] - rho * qr[:, None]) ** s
            denom = ri.f_rad(rho)
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                v = numer / denom
            v[denom <= 0] = np.inf
            return v

        lo = np.zeros(len(rows))
        hi = np.full(len(rows), R * (1.0 - 1e-12))
        out[rows] = _zoom_min(ratio, lo, hi, stages=4, m=129)
    return out


def _s_polar_grid(spec, s, Y, c0):
    fam = spec.family
    vals = np.asarray(fam.values, dtype=float)
    d = spec.dimension
    pos = vals > 0
    from scipy import ndimage

    near = ndimage.binary_dilation(pos, structure=np.ones((3,) * d, dtype=bool))
    org = np.asarray(fam.origin)
    idx_pos = np.argwhere(pos)
    idx_near = np.argwhere(near)
    Xp = org + idx_pos * fam.spacing
    Xn = org + idx_near * fam.spacing
    p = vals[pos] ** (1.0 / s)
    out = np.empty(len(Y))
    chunk = max(1, (1 << 22) // max(len(Xn), 1))
    for a in range(0, len(Y), chunk):
        Yc = Y[a:a + chunk]
        cc = c0[a:a + chunk]
        # zero as soon as the numerator goes negative anywhere near supp f
        num_near = cc[:, None] - Yc @ Xn.T
        zero = num_near.min(axis=1) < 0
        num_pos = np.maximum(0.0, cc[:, None] - Yc @ Xp.T)
        # min of an affine/affine ratio over each simplex sits at a vertex
        r = (num_pos / p[None, :]).min(axis=1) ** s
        r[zero] = 0.0
        out[a:a + chunk] = r
    return out


def _s_polar_generic(spec, s, Y, c0, grid_n=81):
    lo, hi = funcmodel.support_box(spec)
    d = spec.dimension
    axes = [np.linspace(lo[i], hi[i], grid_n) for i in range(d)]
    mesh = np.meshgrid(*axes, indexing="ij")
    X = np.stack([m.ravel() for m in mesh], axis=1)
    f = funcmodel.evaluate_batch(spec, X)
    keep = f > 0
    X = X[keep]
    f = f[keep]
    out = np.empty(len(Y))
    for i, y in enumerate(Y):
        numer = c0[i] - X @ y
        if numer.min() < 0:
            out[i] = 0.0
            continue
        vals = numer**s / f
        j = int(np.argmin(vals))

        def obj(x):
            fx = funcmodel.evaluate(spec, x)
            if fx <= 0:
                return np.inf
            n = c0[i] - float(np.dot(x, y))
            if n < 0:
                return 0.0
            return n**s / fx

        res = optimize.minimize(obj, X[j], method="Nelder-Mead",
                                options={"xatol": 1e-10, "fatol": 1e-12})
        out[i] = min(vals[j], float(res.fun))
    return out


def s_polar(spec: funcmodel.FunctionSpec, s: float, y, center=None) -> float:
    """L_s f at a single point (or L_s(shift(f, center)) when center given)."""
    y = np.asarray(y, dtype=float)
    return float(s_polar_batch(spec, s, y[None, :], center)[0])


@dataclass(frozen=True)
class SPolarEvaluator:
    """Callable wrapper: y -> L_s(shift(base, center))(y)."""

    base: funcmodel.FunctionSpec
    s: float
    center: Optional[tuple] = None

    def __call__(self, Y: np.ndarray) -> np.ndarray:
        return s_polar_batch(self.base, self.s, Y, self.center)


# ---------------------------------------------------------------------------
# Legendre transform and log-polar transform


@dataclass(frozen=True)
class LegendreValue:
    value: float
    infinite: bool


@dataclass(frozen=True, eq=False)
class LegendreEvaluator:
    """Convex conjugate of psi by grid sup plus local refinement.

    The search box should cover the (truncated) effective domain of psi;
    suprema still climbing at the box boundary are tagged infinite.
    """

    psi: Callable[[np.ndarray], np.ndarray]
    lower: np.ndarray
    upper: np.ndarray
    grid_n: int = 129
    nodes: np.ndarray = field(init=False, repr=False)
    psi_nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        d = len(self.lower)
        n = self.grid_n
        axes = [np.linspace(self.lower[i], self.upper[i], n) for i in range(d)]
        mesh = np.meshgrid(*axes, indexing="ij")
        X = np.stack([m.ravel() for m in mesh], axis=1)
        v = self.psi(X)
        keep = np.isfinite(v)
        object.__setattr__(self, "nodes", X[keep])
        object.__setattr__(self, "psi_nodes", v[keep])
        if not keep.any():
            raise InputError("psi has empty effective domain on the search box")


def legendre(ev: LegendreEvaluator, y, refine: bool = True) -> LegendreValue:
    """sup over the search region of <x,y> - psi(x)."""
    y = np.asarray(y, dtype=float)
    scores = ev.nodes @ y - ev.psi_nodes
    j = int(np.argmax(scores))
    x0 = ev.nodes[j]
    best = float(scores[j])
    if refine:
        def neg(x):
            v = ev.psi(x[None, :])[0]
            if not np.isfinite(v):
                return np.inf
            return -(float(np.dot(x, y)) - v)

        res = optimize.minimize(
            neg, x0, method="L-BFGS-B",
            bounds=list(zip(ev.lower, ev.upper)),
            options={"ftol": 1e-14, "gtol": 1e-12},
        )
        if np.isfinite(res.fun):
            best = max(best, -float(res.fun))
            x0 = res.x
    # infinite tag: maximizer pinned to the box with outward ascent
    width = np.asarray(ev.upper) - np.asarray(ev.lower)
    on_edge = (x0 - ev.lower < 1e-6 * width) | (ev.upper - x0 < 1e-6 * width)
    if on_edge.any():
        step = 1e-5 * width
        inward = x0 - np.where(ev.upper - x0 < 1e-6 * width, step, 0.0) \
                    + np.where(x0 - ev.lower < 1e-6 * width, step, 0.0)
        v_in = ev.psi(inward[None, :])[0]
        inner = float(np.dot(inward, y)) - v_in if np.isfinite(v_in) else -np.inf
        if best > inner + 1e-12 * max(1.0, abs(best)):
            return LegendreValue(best, True)
    return LegendreValue(best, False)


def legendre_evaluator(spec: funcmodel.FunctionSpec,
                       eps_tail: float = 1e-12,
                       grid_n: Optional[int] = None) -> LegendreEvaluator:
    """Evaluator for psi = -log f of a log-concave spec."""
    if not spec.is_log_concave:
        raise InputError("legendre_evaluator expects a log-concave spec")
    lo, hi = funcmodel.support_box(spec, eps_tail)

    def psi(X):
        f = funcmodel.evaluate_batch(spec, X)
        with np.errstate(divide="ignore"):
            return -np.log(f)

    n = grid_n or {1: 4097, 2: 257, 3: 65}[spec.dimension]
    return LegendreEvaluator(psi, np.asarray(lo), np.asarray(hi), n)


_LEGENDRE_CACHE: "dict" = {}


def _cached_evaluator(spec) -> LegendreEvaluator:
    ev = _LEGENDRE_CACHE.get(spec)
    if ev is None:
        ev = legendre_evaluator(spec)
        _LEGENDRE_CACHE[spec] = ev
    return ev


def log_polar(spec: funcmodel.FunctionSpec, y, center=None,
              refine: bool = True) -> float:
    """L_inf f(y) = exp(-(-log f)*(y)); 0 where the conjugate is infinite.

    With a center z the result is L_inf(shift(f, z))(y) = e^{<z,y>} L_inf f(y).
    """
    if not spec.is_log_concave:
        raise InputError("log_polar expects a log-concave spec")
    y = np.asarray(y, dtype=float)
    lv = legendre(_cached_evaluator(spec), y, refine=refine)
    if lv.infinite:
        return 0.0
    val = math.exp(-lv.value)
    if center is not None:
        val *= math.exp(float(np.dot(np.asarray(center, dtype=float), y)))
    return val


def log_polar_batch(spec: funcmodel.FunctionSpec, Y: np.ndarray,
                    center=None) -> np.ndarray:
    """Grid-conjugate evaluation of L_inf(shift(f, center)) over rows of Y.

    Uses the cached psi nodes without per-point refinement; adequate for
    integration, use log_polar for high pointwise accuracy.
    """
    if not spec.is_log_concave:
        raise InputError("log_polar expects a log-concave spec")
    ev = _cached_evaluator(spec)
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    out = np.empty(len(Y))
    chunk = max(1, (1 << 24) // max(len(ev.nodes), 1))
    for a in range(0, len(Y), chunk):
        scores = Y[a:a + chunk] @ ev.nodes.T - ev.psi_nodes[None, :]
        out[a:a + chunk] = scores.max(axis=1)
    res = np.exp(-out)
    if center is not None:
        res = res * np.exp(Y @ np.asarray(center, dtype=float))
    return res


# ---------------------------------------------------------------------------
# s-concave approximation and convergence study


def s_approx(spec: funcmodel.FunctionSpec, s: float) -> funcmodel.FunctionSpec:
    """f_s(x) = (1 + log f(x)/s)_+^s, the s-concave approximation of f."""
    if not spec.is_log_concave:
        raise InputError("s_approx expects a log-concave spec")
    return funcmodel.FunctionSpec(
        spec.dimension, funcmodel.SConcave(s), funcmodel.LogApprox(spec, s)
    )


def convergence_study(spec: funcmodel.FunctionSpec,
                      points: Sequence, s_schedule: Sequence[float],
                      cfg=None, boundary_tol: float = 0.02):
    """Pointwise gaps |L_s f_s(x/s) - L_inf f(x)| and Mahler products along an
    s-schedule.  Returns a list of row dicts; points too close to the support
    boundary of L_inf f are excluded with a warning row.
    """
    from . import polar_integrals as pint

    cfg = cfg or pint.IntegrationConfig()
    d = spec.dimension
    z0 = np.zeros(d)
    mass_f, _ = pint.integrate_grid(spec, cfg)
    phi_inf = pint.phi_log(spec, z0, cfg)
    mahler_inf = mass_f * phi_inf
    rows = []
    pts = [np.asarray(p, dtype=float) for p in points]
    linf_vals = [log_polar(spec, x) for x in pts]
    for s in s_schedule:
        fs = s_approx(spec, s)
        mass_fs, _ = pint.integrate_grid(fs, cfg)
        int_ls = pint.phi_oracle(fs, s, z0, cfg).value
        mahler_s = s**d * mass_fs * int_ls
        for x, linf in zip(pts, linf_vals):
            near0 = log_polar(spec, x * (1 - boundary_tol))
            near1 = log_polar(spec, x * (1 + boundary_tol))
            if linf == 0.0 and near0 > 0.0 or linf > 0.0 and near1 == 0.0:
                rows.append({"s": s, "x": tuple(x), "warning": "boundary"})
                continue
            ls_val = s_polar(fs, s, x / s)
            rows.append({
                "s": s, "x": tuple(x),
                "L_s_value": ls_val, "L_inf_value": linf,
                "gap": abs(ls_val - linf),
                "mahler_s": mahler_s, "mahler_inf": mahler_inf,
            })
    return rows
