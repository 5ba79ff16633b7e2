"""Grid and radial integration oracles.

These are the independent brute-force integrators used to cross-check the
spherical formulas: tensor midpoint rules with Richardson extrapolation, a
high-accuracy radial fast path for rotationally symmetric specs, and
half-space split moments for hyperplane constructions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate as sp_integrate

from . import funcmodel
from .errors import InputError, NumericError

# surface area of the unit sphere S^{d-1} in R^d, d = 1, 2, 3
SPHERE_SURFACE = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}

_DEFAULT_RES = {1: 4096, 2: 512, 3: 96}

_CHUNK = 1 << 19


@dataclass(frozen=True)
class IntegrationConfig:
    """Grid oracle settings: cells per axis (defaulted by dimension when
    None), tail cutoff for truncating unbounded supports, and whether the
    radial fast path may be used."""

    resolution: Optional[int] = None
    eps_tail: float = 1e-12
    radial_fast_path: bool = True

    def __post_init__(self):
        if self.resolution is not None and self.resolution < 16:
            raise InputError("resolution must be >= 16")
        if not 0 < self.eps_tail < 1e-3:
            raise InputError("eps_tail must be in (0, 1e-3)")

    def axis_cells(self, d: int) -> int:
        return self.resolution if self.resolution is not None else _DEFAULT_RES[d]


@dataclass(frozen=True)
class MonteCarloConfig:
    samples: int = 200_000
    seed: int = 0

    def __post_init__(self):
        if self.samples < 10_000:
            raise InputError("samples must be >= 10^4")


def _midpoint_chunks(lo, hi, n: int):
    """Yield (points_chunk, cell_volume) covering the box with n^d midpoints."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    d = len(lo)
    h = (hi - lo) / n
    axes = [lo[i] + h[i] * (np.arange(n) + 0.5) for i in range(d)]
    cell = float(np.prod(h))
    if d == 1:
        yield axes[0][:, None], cell
        return
    per_row = n ** (d - 1)
    rows_per_chunk = max(1, _CHUNK // per_row)
    for start in range(0, n, rows_per_chunk):
        first = axes[0][start:start + rows_per_chunk]
        mesh = np.meshgrid(first, *axes[1:], indexing="ij")
        X = np.stack([m.ravel() for m in mesh], axis=1)
        yield X, cell


def midpoint_box(fn: Callable[[np.ndarray], np.ndarray], lo, hi, n: int) -> float:
    total = 0.0
    for X, cell in _midpoint_chunks(lo, hi, n):
        total += float(np.sum(fn(X))) * cell
    return total


def richardson_box(fn, lo, hi, n: int) -> Tuple[float, float]:
    """Midpoint rule at n and 2n cells per axis with Richardson combination;
    returns (value, error estimate)."""
    i1 = midpoint_box(fn, lo, hi, n)
    i2 = midpoint_box(fn, lo, hi, 2 * n)
    value = i2 + (i2 - i1) / 3.0
    err = abs(i2 - i1) / 3.0 + 1e-15 * abs(i2)
    if not math.isfinite(value):
        raise NumericError("grid integral did not converge")
    return value, err


def radial_integral(ri: funcmodel.RadialInfo, d: int,
                    eps_tail: float = 1e-12) -> Tuple[float, float]:
    """omega_{d-1} * int_0^R f_rad(rho) rho^{d-1} drho by adaptive quadrature."""
    R = ri.truncated_radius(eps_tail)
    omega = SPHERE_SURFACE[d]

    def g(rho):
        return ri.f_rad(np.atleast_1d(rho))[0] * rho ** (d - 1)

    val, err = sp_integrate.quad(g, 0.0, R, limit=200)
    return omega * val, omega * err


def integrate_grid(spec: funcmodel.FunctionSpec,
                   cfg: Optional[IntegrationConfig] = None) -> Tuple[float, float]:
    """Integral of f with an error estimate.

    Rotationally symmetric specs take a one-dimensional radial quadrature;
    polytope indicators use the exact hull volume; everything else falls back
    to the tensor midpoint rule with Richardson extrapolation.
    """
    cfg = cfg or IntegrationConfig()
    d = spec.dimension
    ri = funcmodel.radial_info(spec)
    if ri is not None and cfg.radial_fast_path:
        if ri.indicator:
            R = ri.radius
            vol = SPHERE_SURFACE[d] * R**d / d
            return vol, 1e-15 * vol
        return radial_integral(ri, d, cfg.eps_tail)
    fam = spec.family
    if isinstance(fam, funcmodel.PolytopeIndicator):
        if d == 1:
            V = np.asarray(fam.vertices, dtype=float)
            vol = float(V[:, 0].max() - V[:, 0].min())
        else:
            from scipy.spatial import ConvexHull

            vol = float(ConvexHull(np.asarray(fam.vertices, dtype=float)).volume)
        return vol, 1e-15 * vol
    if isinstance(fam, funcmodel.Shifted):
        return integrate_grid(fam.inner, cfg)
    lo, hi = funcmodel.support_box(spec, cfg.eps_tail)
    n = cfg.axis_cells(d)
    return richardson_box(lambda X: funcmodel.evaluate_batch(spec, X), lo, hi, n)


def moment_grid(spec: funcmodel.FunctionSpec,
                cfg: Optional[IntegrationConfig] = None):
    """(mass, first moment vector, error estimate) of f."""
    cfg = cfg or IntegrationConfig()
    d = spec.dimension
    ri = funcmodel.radial_info(spec)
    if ri is not None and cfg.radial_fast_path:
        mass, err = integrate_grid(spec, cfg)
        return mass, ri.center * mass, err
    lo, hi = funcmodel.support_box(spec, cfg.eps_tail)
    n = 2 * cfg.axis_cells(d)
    mass = 0.0
    mom = np.zeros(d)
    for X, cell in _midpoint_chunks(lo, hi, n):
        v = funcmodel.evaluate_batch(spec, X)
        mass += float(np.sum(v)) * cell
        mom += (v @ X) * cell
    coarse = midpoint_box(lambda X: funcmodel.evaluate_batch(spec, X), lo, hi, n // 2)
    err = abs(mass - coarse) / 3.0 + 1e-15 * abs(mass)
    if not math.isfinite(mass):
        raise NumericError("moment integral did not converge")
    return mass, mom, err


def split_moments(spec: funcmodel.FunctionSpec, normal, offset: float,
                  cfg: Optional[IntegrationConfig] = None):
    """Half-space split of mass and moment across H = {<a,x> = c}.

    Returns dict with masses m_plus/m_minus and unnormalized moments
    b_plus/b_minus over the two closed half-spaces.  Cells are assigned by
    the sign at the cell center; cells straddling H are subdivided once.
    """
    cfg = cfg or IntegrationConfig()
    d = spec.dimension
    a = np.asarray(normal, dtype=float)
    a = a / np.linalg.norm(a)
    lo, hi = funcmodel.support_box(spec, cfg.eps_tail)
    n = cfg.axis_cells(d)
    h = (np.asarray(hi) - np.asarray(lo)) / n
    half_diag = 0.5 * float(np.linalg.norm(h))
    sub_offsets = (np.stack(np.meshgrid(*([np.array([-0.25, 0.25])] * d),
                                        indexing="ij"), axis=-1).reshape(-1, d) * h)
    m = np.zeros(2)
    b = np.zeros((2, d))
    for X, cell in _midpoint_chunks(lo, hi, n):
        dist = X @ a - offset
        v = funcmodel.evaluate_batch(spec, X)
        clear = np.abs(dist) > half_diag
        for side, mask in ((0, clear & (dist >= 0)), (1, clear & (dist < 0))):
            m[side] += float(np.sum(v[mask])) * cell
            b[side] += (v[mask] @ X[mask]) * cell
        edge = ~clear
        if edge.any():
            sub = (X[edge][:, None, :] + sub_offsets[None, :, :]).reshape(-1, d)
            sv = funcmodel.evaluate_batch(spec, sub)
            sdist = sub @ a - offset
            w = cell / len(sub_offsets)
            for side, mask in ((0, sdist >= 0), (1, sdist < 0)):
                m[side] += float(np.sum(sv[mask])) * w
                b[side] += (sv[mask] @ sub[mask]) * w
    return {"m_plus": m[0], "m_minus": m[1], "b_plus": b[0], "b_minus": b[1]}
