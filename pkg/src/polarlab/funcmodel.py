"""Declarative test functions: 1/s-concave and log-concave families.

A FunctionSpec pairs a concavity class (SConcave(s) or LogConcave) with a
family description (analytic or grid-based).  All operations here are pure;
specs are frozen after construction and safe to share between threads.

Grid-based functions interpolate the *concavity profile* (f^(1/s) for the
s-concave class, log f for the log-concave class) on a Kuhn simplicial
subdivision of the grid cells, so the represented function stays inside the
declared class up to interpolation error.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .errors import InputError, NumericError

__all__ = [
    "SConcave",
    "LogConcave",
    "BallIndicator",
    "PolytopeIndicator",
    "HhatPower",
    "Gaussian",
    "ExpNegNorm",
    "GridProfile",
    "Shifted",
    "LogApprox",
    "FunctionSpec",
    "SupportClassification",
    "ConcavityReport",
    "BarycenterEstimate",
    "evaluate",
    "evaluate_batch",
    "profile_batch",
    "classify_support",
    "validate_concavity",
    "barycenter",
    "spec_from_json",
    "spec_to_json",
    "radial_info",
    "support_box",
    "supp_support_function",
    "axis_extents",
    "conv_support_contains",
    "support_samples",
    "sup_value",
    "is_indicator",
]

EPS_TAIL = 1e-12  # default tail cutoff for truncating unbounded supports


# ---------------------------------------------------------------------------
# concavity classes and families


@dataclass(frozen=True)
class SConcave:
    """f^(1/s) is concave on the support of f."""

    s: float


@dataclass(frozen=True)
class LogConcave:
    """log f is concave on the support of f."""


@dataclass(frozen=True)
class BallIndicator:
    center: tuple
    radius: float
    kind = "ball_indicator"


@dataclass(frozen=True)
class PolytopeIndicator:
    vertices: tuple  # tuple of coordinate tuples; nonempty interior required
    kind = "polytope_indicator"


@dataclass(frozen=True)
class HhatPower:
    """(1 - |x|^2)_+^(s_exponent/2): the canonical self-s-polar bump."""

    s_exponent: float
    kind = "hhat_power"


@dataclass(frozen=True)
class Gaussian:
    center: tuple
    sigma: float
    kind = "gaussian"


@dataclass(frozen=True)
class ExpNegNorm:
    scale: float
    kind = "exp_neg_norm"


@dataclass(frozen=True, eq=False)
class GridProfile:
    origin: tuple
    spacing: float
    values: np.ndarray = field(repr=False)
    kind = "grid_profile"


@dataclass(frozen=True)
class Shifted:
    inner: "FunctionSpec"
    offset: tuple
    kind = "shifted"


@dataclass(frozen=True)
class LogApprox:
    """(1 + log f_inner / s)_+^s: the s-concave approximation of a
    log-concave inner function."""

    inner: "FunctionSpec"
    s: float
    kind = "log_approx"


Family = Union[
    BallIndicator,
    PolytopeIndicator,
    HhatPower,
    Gaussian,
    ExpNegNorm,
    GridProfile,
    Shifted,
    LogApprox,
]


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    dimension: int
    concavity_class: Union[SConcave, LogConcave]
    family: Family

    def __post_init__(self):
        _validate_spec(self)

    @property
    def is_log_concave(self) -> bool:
        return isinstance(self.concavity_class, LogConcave)

    @property
    def class_s(self) -> Optional[float]:
        cc = self.concavity_class
        return cc.s if isinstance(cc, SConcave) else None


def _vec(v, d, what):
    a = np.asarray(v, dtype=float)
    if a.shape != (d,):
        raise InputError(f"{what}: expected a vector of length {d}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{what}: entries must be finite")
    return a


def _validate_spec(spec: FunctionSpec) -> None:
    d = spec.dimension
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise InputError("dimension must be a positive integer")
    cc = spec.concavity_class
    if isinstance(cc, SConcave):
        if not (cc.s > 0 and math.isfinite(cc.s)):
            raise InputError("SConcave requires s > 0")
    elif not isinstance(cc, LogConcave):
        raise InputError("concavity_class must be SConcave or LogConcave")

    fam = spec.family
    if isinstance(fam, BallIndicator):
        _vec(fam.center, d, "ball center")
        if not fam.radius > 0:
            raise InputError("ball radius must be positive")
    elif isinstance(fam, PolytopeIndicator):
        V = np.asarray(fam.vertices, dtype=float)
        if V.ndim != 2 or V.shape[1] != d or V.shape[0] < d + 1:
            raise InputError("polytope needs at least d+1 vertices of dimension d")
        _polytope_inequalities(fam.vertices, d)  # raises on empty interior
    elif isinstance(fam, HhatPower):
        if not fam.s_exponent > 0:
            raise InputError("hhat_power exponent must be positive")
    elif isinstance(fam, Gaussian):
        _vec(fam.center, d, "gaussian center")
        if not fam.sigma > 0:
            raise InputError("gaussian sigma must be positive")
    elif isinstance(fam, ExpNegNorm):
        if not fam.scale > 0:
            raise InputError("exp_neg_norm scale must be positive")
    elif isinstance(fam, GridProfile):
        vals = np.asarray(fam.values, dtype=float)
        if vals.ndim != d:
            raise InputError("grid values must be a d-dimensional array")
        if not np.all(np.isfinite(vals)) or np.any(vals < 0):
            raise InputError("grid values must be finite and nonnegative")
        if fam.spacing <= 0:
            raise InputError("grid spacing must be positive")
        _vec(fam.origin, d, "grid origin")
        _validate_grid_support(vals)
    elif isinstance(fam, Shifted):
        if fam.inner.dimension != d:
            raise InputError("shifted inner spec dimension mismatch")
        if type(fam.inner.concavity_class) is not type(cc):
            raise InputError("shifted inner spec concavity class mismatch")
        _vec(fam.offset, d, "shift offset")
    elif isinstance(fam, LogApprox):
        if fam.inner.dimension != d:
            raise InputError("log_approx inner spec dimension mismatch")
        if not fam.inner.is_log_concave:
            raise InputError("log_approx requires a log-concave inner spec")
        if not (isinstance(cc, SConcave) and cc.s == fam.s):
            raise InputError("log_approx spec must be SConcave with matching s")
        if not fam.s > 0:
            raise InputError("log_approx s must be positive")
    else:
        raise InputError(f"unknown family {type(fam).__name__}")


def _validate_grid_support(vals: np.ndarray) -> None:
    pos = vals > 0
    if not pos.any():
        raise InputError("grid support is empty")
    # support must be one face-connected component of positive nodes
    idx = np.argwhere(pos)
    seen = {tuple(idx[0])}
    stack = [tuple(idx[0])]
    while stack:
        p = stack.pop()
        for ax in range(vals.ndim):
            for dlt in (-1, 1):
                q = list(p)
                q[ax] += dlt
                q = tuple(q)
                if all(0 <= q[i] < vals.shape[i] for i in range(vals.ndim)) and pos[q] and q not in seen:
                    seen.add(q)
                    stack.append(q)
    if len(seen) != pos.sum():
        raise InputError("grid support must be connected")
    # nonempty interior: at least one cell with all 2^d corners positive
    core = pos
    for ax in range(vals.ndim):
        sl_lo = [slice(None)] * vals.ndim
        sl_hi = [slice(None)] * vals.ndim
        sl_lo[ax] = slice(0, -1)
        sl_hi[ax] = slice(1, None)
        core = core[tuple(sl_lo)] & pos[tuple(sl_hi)] if ax == 0 else core & pos[tuple(sl_hi)][..., :][tuple()]
    # simpler recomputation (the loop above is awkward to fuse):
    core = pos
    for ax in range(vals.ndim):
        lo = [slice(None)] * vals.ndim
        hi = [slice(None)] * vals.ndim
        lo[ax] = slice(0, -1)
        hi[ax] = slice(1, None)
        core = core[tuple(lo)] & core[tuple(hi)]
    if not core.any():
        raise InputError("grid support has empty interior (no fully positive cell)")


# ---------------------------------------------------------------------------
# evaluation


def evaluate(spec: FunctionSpec, x) -> float:
    """f(x) for a single point x in R^d."""
    X = _vec(x, spec.dimension, "point")[None, :]
    return float(evaluate_batch(spec, X)[0])


def evaluate_batch(spec: FunctionSpec, X: np.ndarray) -> np.ndarray:
    """Vectorized f over rows of X, shape (n, d)."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != spec.dimension:
        raise InputError("points must have shape (n, d)")
    fam = spec.family
    if isinstance(fam, BallIndicator):
        r = np.linalg.norm(X - np.asarray(fam.center), axis=1)
        return (r <= fam.radius).astype(float)
    if isinstance(fam, PolytopeIndicator):
        A, b = _polytope_inequalities(fam.vertices, spec.dimension)
        inside = np.all(X @ A.T <= b + 1e-12, axis=1)
        return inside.astype(float)
    if isinstance(fam, HhatPower):
        r2 = np.sum(X * X, axis=1)
        return np.maximum(0.0, 1.0 - r2) ** (fam.s_exponent / 2.0)
    if isinstance(fam, Gaussian):
        r2 = np.sum((X - np.asarray(fam.center)) ** 2, axis=1)
        return np.exp(-r2 / (2.0 * fam.sigma**2))
    if isinstance(fam, ExpNegNorm):
        return np.exp(-fam.scale * np.linalg.norm(X, axis=1))
    if isinstance(fam, Shifted):
        return evaluate_batch(fam.inner, X - np.asarray(fam.offset))
    if isinstance(fam, LogApprox):
        inner = evaluate_batch(fam.inner, X)
        with np.errstate(divide="ignore"):
            lg = np.log(inner)
        return np.maximum(0.0, 1.0 + lg / fam.s) ** fam.s
    if isinstance(fam, GridProfile):
        p = _grid_interp_profile(spec, X)
        if spec.is_log_concave:
            out = np.exp(p)
            out[~np.isfinite(p)] = 0.0
            return out
        return np.maximum(0.0, p) ** spec.class_s
    raise InputError("unhandled family")


def profile_batch(spec: FunctionSpec, X: np.ndarray) -> np.ndarray:
    """Concavity profile: f^(1/s) for SConcave, log f for LogConcave.

    Outside the support the profile is 0 (s-concave) resp. -inf (log).
    """
    f = evaluate_batch(spec, X)
    if spec.is_log_concave:
        with np.errstate(divide="ignore"):
            return np.log(f)
    return f ** (1.0 / spec.class_s)


@lru_cache(maxsize=256)
def _polytope_inequalities(vertices: tuple, d: int):
    """Facet inequalities A x <= b of conv(vertices); raises InputError if the
    hull is degenerate (empty interior)."""
    V = np.asarray(vertices, dtype=float)
    if d == 1:
        lo, hi = V[:, 0].min(), V[:, 0].max()
        if hi - lo <= 0:
            raise InputError("polytope has empty interior")
        return np.array([[1.0], [-1.0]]), np.array([hi, -lo])
    from scipy.spatial import ConvexHull, QhullError

    try:
        hull = ConvexHull(V)
    except QhullError as exc:
        raise InputError("polytope has empty interior") from exc
    eq = hull.equations  # rows [a, b] with a.x + b <= 0
    return eq[:, :-1], -eq[:, -1]


def _grid_interp_profile(spec: FunctionSpec, X: np.ndarray) -> np.ndarray:
    """Piecewise-linear interpolation of the node profile on the Kuhn
    subdivision of grid cells; -inf (log) / 0 (s-concave boundary handled by
    caller) outside the grid hull."""
    fam = spec.family
    vals = np.asarray(fam.values, dtype=float)
    if spec.is_log_concave:
        with np.errstate(divide="ignore"):
            nodes = np.log(vals)
        fill = -np.inf
    else:
        nodes = vals ** (1.0 / spec.class_s)
        fill = 0.0
    d = spec.dimension
    t = (X - np.asarray(fam.origin)) / fam.spacing
    cell = np.floor(t).astype(int)
    frac = t - cell
    # clamp points exactly on the upper grid edge into the last cell
    for ax in range(d):
        top = cell[:, ax] == vals.shape[ax] - 1
        sel = top & (frac[:, ax] == 0.0)
        cell[sel, ax] -= 1
        frac[sel, ax] = 1.0
    inside = np.all(cell >= 0, axis=1) & np.all(
        cell < np.asarray(vals.shape) - 1, axis=1
    )
    out = np.full(len(X), fill)
    if not inside.any():
        return out
    c = cell[inside]
    fr = frac[inside]
    order = np.argsort(-fr, axis=1, kind="stable")
    fr_sorted = np.take_along_axis(fr, order, axis=1)
    # Kuhn simplex weights
    w = np.empty((c.shape[0], d + 1))
    w[:, 0] = 1.0 - fr_sorted[:, 0]
    for k in range(1, d):
        w[:, k] = fr_sorted[:, k - 1] - fr_sorted[:, k]
    w[:, d] = fr_sorted[:, d - 1]
    vert = np.repeat(c[:, None, :], d + 1, axis=1)
    for k in range(1, d + 1):
        rows = np.arange(c.shape[0])
        for j in range(k):
            vert[rows, k, order[:, j]] += 0  # placeholder, filled below
    # vertex k = cell + sum of e_{order[0..k-1]}
    vert = np.repeat(c[:, None, :], d + 1, axis=1)
    for k in range(1, d + 1):
        ax = order[:, k - 1]
        vert[np.arange(c.shape[0]), k, ax] = vert[np.arange(c.shape[0]), k - 1, ax] + 1
        # carry earlier increments forward
        if k >= 2:
            prev = vert[:, k - 1, :].copy()
            prev[np.arange(c.shape[0]), ax] += 1
            vert[:, k, :] = prev
    node_vals = nodes[tuple(vert.reshape(-1, d).T)].reshape(-1, d + 1)
    with np.errstate(invalid="ignore"):
        contrib = w * node_vals
    # a zero-weight vertex never contributes, even at -inf nodes
    contrib[w <= 1e-15] = 0.0
    res = contrib.sum(axis=1)
    res[np.any((node_vals == -np.inf) & (w > 1e-15), axis=1)] = -np.inf
    out[inside] = res
    return out


# ---------------------------------------------------------------------------
# geometry helpers


@dataclass(frozen=True)
class RadialInfo:
    """Radial structure of a spec: f(x) = f_rad(|x - center|)."""

    center: np.ndarray
    radius: float  # support radius; may be inf
    f_rad: object  # vectorized profile of rho
    indicator: bool = False

    def truncated_radius(self, eps_tail: float = EPS_TAIL) -> float:
        if np.isfinite(self.radius):
            return self.radius
        lo, hi = 0.0, 1.0
        while self.f_rad(np.array([hi]))[0] > eps_tail:
            hi *= 2.0
            if hi > 1e12:
                raise NumericError("radial profile does not decay")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self.f_rad(np.array([mid]))[0] > eps_tail:
                lo = mid
            else:
                hi = mid
        return hi


def radial_info(spec: FunctionSpec) -> Optional[RadialInfo]:
    """Radial description of the spec, or None if the family is not a radial
    profile around a fixed center."""
    fam = spec.family
    d = spec.dimension
    if isinstance(fam, BallIndicator):
        return RadialInfo(np.asarray(fam.center), fam.radius,
                          lambda r: (np.asarray(r) <= fam.radius).astype(float),
                          indicator=True)
    if isinstance(fam, HhatPower):
        e = fam.s_exponent
        return RadialInfo(np.zeros(d), 1.0,
                          lambda r: np.maximum(0.0, 1.0 - np.asarray(r) ** 2) ** (e / 2.0))
    if isinstance(fam, Gaussian):
        sg = fam.sigma
        return RadialInfo(np.asarray(fam.center), np.inf,
                          lambda r: np.exp(-np.asarray(r) ** 2 / (2.0 * sg**2)))
    if isinstance(fam, ExpNegNorm):
        a = fam.scale
        return RadialInfo(np.zeros(d), np.inf,
                          lambda r: np.exp(-a * np.asarray(r)))
    if isinstance(fam, Shifted):
        ri = radial_info(fam.inner)
        if ri is None:
            return None
        return RadialInfo(ri.center + np.asarray(fam.offset), ri.radius, ri.f_rad,
                          ri.indicator)
    if isinstance(fam, LogApprox):
        ri = radial_info(fam.inner)
        if ri is None:
            return None
        s = fam.s

        def f_rad(r, _inner=ri.f_rad, _s=s):
            with np.errstate(divide="ignore"):
                lg = np.log(_inner(r))
            return np.maximum(0.0, 1.0 + lg / _s) ** _s

        # support radius: where log f_inner drops to -s
        sub = RadialInfo(ri.center, ri.radius, ri.f_rad)
        radius = min(ri.radius, sub.truncated_radius(math.exp(-s)))
        return RadialInfo(ri.center, radius, f_rad)
    return None


def is_indicator(spec: FunctionSpec) -> bool:
    fam = spec.family
    if isinstance(fam, (BallIndicator, PolytopeIndicator)):
        return True
    if isinstance(fam, (Shifted, LogApprox)):
        return is_indicator(fam.inner)
    return False


def support_box(spec: FunctionSpec, eps_tail: float = EPS_TAIL):
    """Axis-aligned bounding box (lo, hi) of the (truncated) support."""
    fam = spec.family
    d = spec.dimension
    ri = radial_info(spec)
    if ri is not None:
        R = ri.truncated_radius(eps_tail)
        return ri.center - R, ri.center + R
    if isinstance(fam, PolytopeIndicator):
        V = np.asarray(fam.vertices, dtype=float)
        return V.min(axis=0), V.max(axis=0)
    if isinstance(fam, GridProfile):
        pos = np.argwhere(np.asarray(fam.values) > 0)
        org = np.asarray(fam.origin)
        return (org + (pos.min(axis=0) - 1).clip(0) * fam.spacing,
                org + (pos.max(axis=0) + 1).clip(max=np.asarray(fam.values.shape) - 1)
                * fam.spacing)
    if isinstance(fam, Shifted):
        lo, hi = support_box(fam.inner, eps_tail)
        off = np.asarray(fam.offset)
        return lo + off, hi + off
    raise InputError("unhandled family in support_box")


def _support_points(spec: FunctionSpec):
    """Points whose convex hull contains (a truncation of) supp f; used for
    polytope and grid geometry."""
    fam = spec.family
    if isinstance(fam, PolytopeIndicator):
        return np.asarray(fam.vertices, dtype=float)
    if isinstance(fam, GridProfile):
        pos = np.argwhere(np.asarray(fam.values) > 0)
        return np.asarray(fam.origin) + pos * fam.spacing
    if isinstance(fam, Shifted):
        return _support_points(fam.inner) + np.asarray(fam.offset)
    return None


def supp_support_function(spec: FunctionSpec, Y: np.ndarray,
                          eps_tail: float = EPS_TAIL) -> np.ndarray:
    """h_{supp f}(y) over rows of Y.  Unbounded supports are truncated."""
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    ri = radial_info(spec)
    if ri is not None:
        R = ri.truncated_radius(eps_tail)
        return Y @ ri.center + R * np.linalg.norm(Y, axis=1)
    pts = _support_points(spec)
    if pts is not None:
        return (Y @ pts.T).max(axis=1)
    raise InputError("unhandled family in supp_support_function")


def axis_extents(spec: FunctionSpec, z: np.ndarray,
                 eps_tail: float = EPS_TAIL):
    """Per-axis reach (r_minus, r_plus) of supp f - z along -e_i / +e_i.

    Requires z in the interior of (the truncation of) conv supp f.
    """
    d = spec.dimension
    z = np.asarray(z, dtype=float)
    ri = radial_info(spec)
    if ri is not None:
        R = ri.truncated_radius(eps_tail)
        c = ri.center - z
        if np.linalg.norm(c) >= R:
            raise NumericError("center outside the support")
        rp = np.empty(d)
        rm = np.empty(d)
        for i in range(d):
            rest = np.sum(c * c) - c[i] ** 2
            root = math.sqrt(R * R - rest)
            rp[i] = c[i] + root
            rm[i] = -c[i] + root
        return rm, rp
    pts = _support_points(spec)
    if pts is not None:
        if d == 1:
            lo, hi = pts[:, 0].min(), pts[:, 0].max()
            if not (lo < z[0] < hi):
                raise NumericError("center outside the support")
            return np.array([z[0] - lo]), np.array([hi - z[0]])
        A, b = _polytope_inequalities(tuple(map(tuple, pts)), d)
        slack = b - A @ z
        if np.any(slack <= 0):
            raise NumericError("center outside the support")
        rp = np.empty(d)
        rm = np.empty(d)
        for i in range(d):
            pos = A[:, i] > 1e-14
            neg = A[:, i] < -1e-14
            rp[i] = np.min(slack[pos] / A[pos, i]) if pos.any() else np.inf
            rm[i] = np.min(slack[neg] / -A[neg, i]) if neg.any() else np.inf
        return rm, rp
    raise InputError("unhandled family in axis_extents")


def support_ray_extent(spec: FunctionSpec, z, direction,
                       eps_tail: float = EPS_TAIL) -> float:
    """max r with z + r * direction in the (truncated) convex support hull."""
    z = _vec(z, spec.dimension, "point")
    u = np.asarray(direction, dtype=float)
    u = u / np.linalg.norm(u)
    ri = radial_info(spec)
    if ri is not None:
        R = ri.truncated_radius(eps_tail)
        c = z - ri.center
        b = float(c @ u)
        disc = b * b - (float(c @ c) - R * R)
        if disc < 0:
            raise NumericError("ray start outside the support")
        return -b + math.sqrt(disc)
    pts = _support_points(spec)
    if pts is not None:
        if spec.dimension == 1:
            hi = pts[:, 0].max() if u[0] > 0 else pts[:, 0].min()
            return (hi - z[0]) / u[0]
        A, b = _polytope_inequalities(tuple(map(tuple, pts)), spec.dimension)
        slack = b - A @ z
        rate = A @ u
        pos = rate > 1e-14
        if not pos.any():
            return np.inf
        return float(np.min(slack[pos] / rate[pos]))
    raise InputError("unhandled family in support_ray_extent")


def conv_support_contains(spec: FunctionSpec, x, tol: float = 0.0,
                          eps_tail: float = EPS_TAIL) -> bool:
    x = _vec(x, spec.dimension, "point")
    ri = radial_info(spec)
    if ri is not None:
        return np.linalg.norm(x - ri.center) <= ri.truncated_radius(eps_tail) + tol
    pts = _support_points(spec)
    if pts is not None:
        if spec.dimension == 1:
            return pts[:, 0].min() - tol <= x[0] <= pts[:, 0].max() + tol
        A, b = _polytope_inequalities(tuple(map(tuple, pts)), spec.dimension)
        return bool(np.all(A @ x <= b + tol))
    raise InputError("unhandled family in conv_support_contains")


def sup_value(spec: FunctionSpec) -> float:
    """sup f.  All built-in families attain their sup at a known point."""
    fam = spec.family
    if isinstance(fam, (BallIndicator, PolytopeIndicator)):
        return 1.0
    if isinstance(fam, (HhatPower, Gaussian, ExpNegNorm, LogApprox)):
        return 1.0 if not isinstance(fam, LogApprox) else float(
            np.maximum(0.0, 1.0 + math.log(max(sup_value(fam.inner), 1e-300)) / fam.s)
            ** fam.s
        )
    if isinstance(fam, GridProfile):
        return float(np.asarray(fam.values).max())
    if isinstance(fam, Shifted):
        return sup_value(fam.inner)
    raise InputError("unhandled family in sup_value")


def support_samples(spec: FunctionSpec, n: int, seed: int,
                    eps_tail: float = EPS_TAIL) -> np.ndarray:
    """n points sampled uniformly from {f > 0} by rejection in the bounding
    box of the (truncated) support."""
    rng = np.random.default_rng(seed)
    lo, hi = support_box(spec, eps_tail)
    out = []
    got = 0
    for _ in range(1000):
        X = rng.uniform(lo, hi, size=(max(4 * n, 256), spec.dimension))
        X = X[evaluate_batch(spec, X) > 0]
        out.append(X)
        got += len(X)
        if got >= n:
            break
    X = np.concatenate(out)
    if len(X) < n:
        raise NumericError("support sampling failed (support too thin?)")
    return X[:n]


# ---------------------------------------------------------------------------
# classification, concavity validation, barycenter


@dataclass(frozen=True)
class SupportClassification:
    kind: str  # "interior" | "boundary" | "outside"
    tolerance: float


def classify_support(spec: FunctionSpec, x, tol: float) -> SupportClassification:
    """Interior iff a ball of radius tol around x lies in {f > 0}."""
    if tol <= 0:
        raise InputError("tol must be positive")
    x = _vec(x, spec.dimension, "point")
    fam = spec.family
    ri = radial_info(spec)
    if ri is not None and not np.isfinite(ri.radius):
        return SupportClassification("interior", tol)  # full support
    if ri is not None:
        dist = ri.radius - np.linalg.norm(x - ri.center)
        if dist > tol:
            return SupportClassification("interior", tol)
        if dist >= -tol:
            return SupportClassification("boundary", tol)
        return SupportClassification("outside", tol)
    if isinstance(fam, Shifted):
        return classify_support(fam.inner, x - np.asarray(fam.offset), tol)
    pts = _support_points(spec)
    if isinstance(fam, PolytopeIndicator) or (
        isinstance(fam, GridProfile) and pts is not None
    ):
        if isinstance(fam, GridProfile):
            # sample a tol-cross around x; exact only for convex supports
            probes = x + np.concatenate(
                [np.zeros((1, spec.dimension))]
                + [tol * np.eye(spec.dimension), -tol * np.eye(spec.dimension)]
            )
            vals = evaluate_batch(spec, probes)
            if np.all(vals > 0):
                return SupportClassification("interior", tol)
            if vals[0] > 0 or np.any(vals > 0):
                return SupportClassification("boundary", tol)
            return SupportClassification("outside", tol)
        A, b = _polytope_inequalities(fam.vertices, spec.dimension)
        norms = np.linalg.norm(A, axis=1)
        sl = (b - A @ x) / norms
        dist = sl.min()
        if dist > tol:
            return SupportClassification("interior", tol)
        if dist >= -tol:
            return SupportClassification("boundary", tol)
        return SupportClassification("outside", tol)
    raise InputError("unhandled family in classify_support")


@dataclass(frozen=True)
class ConcavityReport:
    trials: int
    violations: tuple  # (x, y, gap) triples beyond tolerance
    max_violation: float

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_concavity(spec: FunctionSpec, trials: int, seed: int,
                       tol: float = 1e-9) -> ConcavityReport:
    """Random midpoint checks of the concavity profile on supp f."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    X = support_samples(spec, trials, seed)
    Y = support_samples(spec, trials, seed + 1)
    M = 0.5 * (X + Y)
    px, py, pm = (profile_batch(spec, P) for P in (X, Y, M))
    gap = 0.5 * (px + py) - pm  # positive gap = concavity violated
    gap = np.where(np.isfinite(gap), gap, np.where(pm == -np.inf, np.inf, -np.inf))
    bad = gap > tol
    viol = tuple(
        (tuple(X[i]), tuple(Y[i]), float(gap[i])) for i in np.nonzero(bad)[0][:100]
    )
    mx = float(np.max(gap, initial=0.0))
    return ConcavityReport(trials, viol, max(mx, 0.0))


@dataclass(frozen=True)
class BarycenterEstimate:
    vector: np.ndarray
    error: float


def barycenter(spec: FunctionSpec, cfg=None) -> BarycenterEstimate:
    """Mass-normalized first moment, by the grid oracle."""
    from . import integration

    cfg = cfg or integration.IntegrationConfig()
    mass, mom, err = integration.moment_grid(spec, cfg)
    if not mass > 0 or not np.isfinite(mass):
        raise NumericError("spec has nonpositive or non-finite integral")
    return BarycenterEstimate(mom / mass, err / mass)


# ---------------------------------------------------------------------------
# JSON interface

SPEC_SCHEMA = {
    "type": "object",
    "required": ["dimension", "class", "family"],
    "additionalProperties": False,
    "properties": {
        "dimension": {"type": "integer", "minimum": 1},
        "class": {
            "oneOf": [
                {"const": "log"},
                {
                    "type": "object",
                    "required": ["s"],
                    "additionalProperties": False,
                    "properties": {"s": {"type": "number", "exclusiveMinimum": 0}},
                },
            ]
        },
        "family": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"type": "string"}},
        },
    },
}

_VECTOR = {"type": "array", "items": {"type": "number"}, "minItems": 1}

FAMILY_SCHEMAS = {
    "ball_indicator": {
        "required": ["kind", "center", "radius"],
        "properties": {"center": _VECTOR, "radius": {"type": "number", "exclusiveMinimum": 0}},
    },
    "polytope_indicator": {
        "required": ["kind", "vertices"],
        "properties": {"vertices": {"type": "array", "items": _VECTOR, "minItems": 2}},
    },
    "hhat_power": {
        "required": ["kind", "s_exponent"],
        "properties": {"s_exponent": {"type": "number", "exclusiveMinimum": 0}},
    },
    "gaussian": {
        "required": ["kind", "center", "sigma"],
        "properties": {"center": _VECTOR, "sigma": {"type": "number", "exclusiveMinimum": 0}},
    },
    "exp_neg_norm": {
        "required": ["kind", "scale"],
        "properties": {"scale": {"type": "number", "exclusiveMinimum": 0}},
    },
    "grid_profile": {
        "required": ["kind", "origin", "spacing", "values"],
        "properties": {
            "origin": _VECTOR,
            "spacing": {"type": "number", "exclusiveMinimum": 0},
            "values": {"type": "array"},
        },
    },
    "shifted": {
        "required": ["kind", "inner", "offset"],
        "properties": {"inner": {"type": "object"}, "offset": _VECTOR},
    },
    "log_approx": {
        "required": ["kind", "inner", "s"],
        "properties": {"inner": {"type": "object"}, "s": {"type": "number", "exclusiveMinimum": 0}},
    },
}


def spec_from_json(text: str) -> FunctionSpec:
    """Parse and validate a FunctionSpec JSON document.

    Raises InputError carrying a list of {path, message} violations.
    """
    import jsonschema

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON", [{"path": "", "message": str(exc)}]) from exc
    return _spec_from_doc(doc, path="")


def _spec_from_doc(doc, path: str) -> FunctionSpec:
    import jsonschema

    validator = jsonschema.Draft202012Validator(SPEC_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        viol = [
            {"path": path + "/" + "/".join(str(p) for p in e.absolute_path),
             "message": e.message}
            for e in errors
        ]
        raise InputError("spec schema violation", viol)
    fam_doc = doc["family"]
    kind = fam_doc["kind"]
    if kind not in FAMILY_SCHEMAS:
        raise InputError("spec schema violation",
                         [{"path": f"{path}/family/kind", "message": f"unknown kind {kind!r}"}])
    fam_schema = {"type": "object", "additionalProperties": False}
    fam_schema.update(FAMILY_SCHEMAS[kind])
    fam_schema["properties"] = dict(fam_schema["properties"], kind={"const": kind})
    ferrs = sorted(
        jsonschema.Draft202012Validator(fam_schema).iter_errors(fam_doc),
        key=lambda e: list(e.absolute_path),
    )
    if ferrs:
        viol = [
            {"path": f"{path}/family/" + "/".join(str(p) for p in e.absolute_path),
             "message": e.message}
            for e in ferrs
        ]
        raise InputError("spec schema violation", viol)

    cls = LogConcave() if doc["class"] == "log" else SConcave(float(doc["class"]["s"]))
    d = doc["dimension"]
    if kind == "ball_indicator":
        fam = BallIndicator(tuple(fam_doc["center"]), float(fam_doc["radius"]))
    elif kind == "polytope_indicator":
        fam = PolytopeIndicator(tuple(tuple(v) for v in fam_doc["vertices"]))
    elif kind == "hhat_power":
        fam = HhatPower(float(fam_doc["s_exponent"]))
    elif kind == "gaussian":
        fam = Gaussian(tuple(fam_doc["center"]), float(fam_doc["sigma"]))
    elif kind == "exp_neg_norm":
        fam = ExpNegNorm(float(fam_doc["scale"]))
    elif kind == "grid_profile":
        fam = GridProfile(tuple(fam_doc["origin"]), float(fam_doc["spacing"]),
                          np.asarray(fam_doc["values"], dtype=float))
    elif kind == "shifted":
        fam = Shifted(_spec_from_doc(fam_doc["inner"], path + "/family/inner"),
                      tuple(fam_doc["offset"]))
    else:  # log_approx
        fam = LogApprox(_spec_from_doc(fam_doc["inner"], path + "/family/inner"),
                        float(fam_doc["s"]))
    return FunctionSpec(d, cls, fam)


def spec_to_json(spec: FunctionSpec) -> str:
    return json.dumps(_spec_to_doc(spec), sort_keys=True)


def _spec_to_doc(spec: FunctionSpec):
    cc = spec.concavity_class
    cls = "log" if isinstance(cc, LogConcave) else {"s": cc.s}
    fam = spec.family
    if isinstance(fam, BallIndicator):
        f = {"kind": fam.kind, "center": list(fam.center), "radius": fam.radius}
    elif isinstance(fam, PolytopeIndicator):
        f = {"kind": fam.kind, "vertices": [list(v) for v in fam.vertices]}
    elif isinstance(fam, HhatPower):
        f = {"kind": fam.kind, "s_exponent": fam.s_exponent}
    elif isinstance(fam, Gaussian):
        f = {"kind": fam.kind, "center": list(fam.center), "sigma": fam.sigma}
    elif isinstance(fam, ExpNegNorm):
        f = {"kind": fam.kind, "scale": fam.scale}
    elif isinstance(fam, GridProfile):
        f = {"kind": fam.kind, "origin": list(fam.origin), "spacing": fam.spacing,
             "values": np.asarray(fam.values).tolist()}
    elif isinstance(fam, Shifted):
        f = {"kind": fam.kind, "inner": _spec_to_doc(fam.inner),
             "offset": list(fam.offset)}
    else:
        f = {"kind": fam.kind, "inner": _spec_to_doc(fam.inner), "s": fam.s}
    return {"dimension": spec.dimension, "class": cls, "family": f}
