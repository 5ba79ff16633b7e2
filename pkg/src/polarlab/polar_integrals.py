"""Integrals of polars: the kappa constant, the spherical support-function
formula for Phi(z) = int L_s(shift(f, z)), its gradient, the brute-force grid
oracle for the same quantity, and the log-concave analogue Phi_inf.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy import special

from . import funcmodel, lifting, transforms
from .errors import DomainError, InputError, NumericError
from .integration import (  # noqa: F401  (re-exported oracle interface)
    SPHERE_SURFACE,
    IntegrationConfig,
    MonteCarloConfig,
    integrate_grid,
    midpoint_box,
    richardson_box,
)

__all__ = [
    "kappa",
    "SphereQuadrature",
    "PolarIntegral",
    "IntegrationConfig",
    "MonteCarloConfig",
    "integrate_grid",
    "phi_sphere",
    "phi_oracle",
    "phi_gradient",
    "polar_moment",
    "phi_log",
    "phi_log_gradient",
    "default_quadrature",
]

_ORACLE_RES = {1: 2048, 2: 256, 3: 64}
_LOG_GRID_RES = {1: 4096, 2: 256, 3: 48}


def kappa(d: int, s: float) -> float:
    """kappa(d, s) = pi^{d/2} Gamma(s/2 + 1) / Gamma(s/2 + d/2 + 1),
    the integral of (1 - |x|^2)_+^{s/2} over R^d."""
    if d < 1 or not s > 0:
        raise InputError("kappa requires d >= 1 and s > 0")
    return math.exp(
        0.5 * d * math.log(math.pi)
        + math.lgamma(0.5 * s + 1.0)
        - math.lgamma(0.5 * s + 0.5 * d + 1.0)
    )


# ---------------------------------------------------------------------------
# sphere quadrature with the |u_{d+1}|^{s-1} weight absorbed


def _fibonacci_sphere(n: int) -> np.ndarray:
    """n reasonably uniform points on S^2 (Fibonacci spiral)."""
    k = np.arange(n) + 0.5
    phi = math.pi * (1.0 + math.sqrt(5.0)) * k
    ct = 1.0 - 2.0 * k / n
    st = np.sqrt(np.maximum(0.0, 1.0 - ct * ct))
    return np.stack([st * np.cos(phi), st * np.sin(phi), ct], axis=1)


_DEFAULT_NODES = {1: (128, 2), 2: (64, 128), 3: (64, 1024)}


@dataclass(frozen=True, eq=False)
class SphereQuadrature:
    """Product rule on S^d absorbing the vertical weight |u_{d+1}|^{s-1}.

    Vertical: Gauss-Jacobi in the substitution u_{d+1} = sin((pi/4)(1+x)),
    with weight (1-x)^{d-1}(1+x)^{s-1} so that both the |t|^{s-1} factor and
    the cos^{d-1} surface factor are handled spectrally.  Horizontal: exact
    two-point rule (d=1), midpoint trapezoid on the circle (d=2), Fibonacci
    set on S^2 (d=3).  Weights sum to the closed-form moment
    omega_{d-1} * B(s/2, d/2) of the unnormalized surface measure.
    """

    d: int
    s: float
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    n_vertical: int
    n_horizontal: int

    @classmethod
    def build(cls, d: int, s: float,
              n_vertical: Optional[int] = None,
              n_horizontal: Optional[int] = None) -> "SphereQuadrature":
        if d not in (1, 2, 3):
            raise InputError("quadrature supports d in {1, 2, 3}")
        if not s > 0:
            raise InputError("s must be positive")
        nv0, nh0 = _DEFAULT_NODES[d]
        nv = n_vertical or nv0
        nh = n_horizontal or nh0

        x, wj = special.roots_jacobi(nv, d - 1.0, s - 1.0)
        phi = 0.25 * math.pi * (1.0 + x)
        t = np.sin(phi)  # vertical coordinate in (0, 1)
        c = np.cos(phi)
        # smooth parts of sin(phi)/(1+x) and cos(phi)/(1-x)
        S = t / (1.0 + x)
        C = c / (1.0 - x)
        w_vert = wj * (0.25 * math.pi) * S ** (s - 1.0) * C ** (d - 1.0)

        if d == 1:
            omegas = np.array([[1.0], [-1.0]])
            w_h = np.array([1.0, 1.0])
        elif d == 2:
            th = 2.0 * math.pi * (np.arange(nh) + 0.5) / nh
            omegas = np.stack([np.cos(th), np.sin(th)], axis=1)
            w_h = np.full(nh, 2.0 * math.pi / nh)
        else:
            omegas = _fibonacci_sphere(nh)
            w_h = np.full(nh, 4.0 * math.pi / nh)

        n_omega = len(omegas)
        nodes = np.empty((2 * nv * n_omega, d + 1))
        weights = np.empty(2 * nv * n_omega)
        k = 0
        for sign in (1.0, -1.0):
            horiz = omegas[None, :, :] * c[:, None, None]  # (nv, n_omega, d)
            blk = np.concatenate(
                [horiz, np.broadcast_to((sign * t)[:, None, None], (nv, n_omega, 1))],
                axis=2,
            ).reshape(-1, d + 1)
            nodes[k:k + nv * n_omega] = blk
            weights[k:k + nv * n_omega] = (w_vert[:, None] * w_h[None, :]).ravel()
            k += nv * n_omega
        return cls(d, s, nodes, weights, nv, n_omega)

    def moment(self) -> float:
        """Closed-form int_{S^d} |u_{d+1}|^{s-1} dsigma for the sanity check."""
        return SPHERE_SURFACE[self.d] * special.beta(0.5 * self.s, 0.5 * self.d)

    def doubled(self) -> "SphereQuadrature":
        return SphereQuadrature.build(self.d, self.s,
                                      2 * self.n_vertical, 2 * self.n_horizontal)


_QUAD_CACHE: dict = {}


def default_quadrature(d: int, s: float) -> SphereQuadrature:
    key = (d, float(s))
    q = _QUAD_CACHE.get(key)
    if q is None:
        q = SphereQuadrature.build(d, s)
        _QUAD_CACHE[key] = q
    return q


@dataclass(frozen=True)
class PolarIntegral:
    """Phi(z) with optional gradient/moment diagnostics."""

    value: float
    method: str
    gradient: Optional[np.ndarray] = None
    moment: Optional[np.ndarray] = None
    err_est: Optional[float] = None
    nodes: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "gradient": None if self.gradient is None else list(self.gradient),
            "moment": None if self.moment is None else list(self.moment),
            "method": self.method,
            "nodes": self.nodes,
            "err_est": self.err_est,
        }


# cached support values of K-hat_s(f) at quadrature nodes, keyed per spec
_SUPPORT_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def node_support(spec: funcmodel.FunctionSpec, s: float,
                 quad: SphereQuadrature) -> np.ndarray:
    per_spec = _SUPPORT_CACHE.setdefault(spec, {})
    key = (float(s), id(quad))
    h0 = per_spec.get(key)
    if h0 is None:
        body = lifting.LiftedBody(spec, s)
        h0 = body.support_batch(quad.nodes)
        per_spec[key] = h0
    return h0


def _shifted_support(spec, s, z, quad) -> np.ndarray:
    h0 = node_support(spec, s, quad)
    z = np.asarray(z, dtype=float)
    h = h0 - quad.nodes[:, :spec.dimension] @ z
    if h.min() <= 0.0:
        raise DomainError("center is not interior to the lifted body")
    return h


def phi_sphere(spec: funcmodel.FunctionSpec, s: float, z,
               quad: Optional[SphereQuadrature] = None,
               error_estimate: bool = False) -> PolarIntegral:
    """Phi(z) = s/(2(d+s)) * int_{S^d} |u_{d+1}|^{s-1} / h_{K-hat - z}(u)^{d+s} dsigma."""
    d = spec.dimension
    quad = quad or default_quadrature(d, s)
    if quad.d != d or quad.s != s:
        raise InputError("quadrature does not match (d, s)")
    h = _shifted_support(spec, s, z, quad)
    with np.errstate(over="ignore"):
        value = s / (2.0 * (d + s)) * float(np.sum(quad.weights * h ** (-(d + s))))
    err = None
    if error_estimate:
        q2 = quad.doubled()
        h2 = _shifted_support(spec, s, z, q2)
        v2 = s / (2.0 * (d + s)) * float(np.sum(q2.weights * h2 ** (-(d + s))))
        err = abs(v2 - value)
        value = v2
    if not math.isfinite(value):
        raise NumericError("spherical formula diverged")
    return PolarIntegral(value, "sphere", err_est=err, nodes=len(quad.nodes))


def phi_gradient(spec: funcmodel.FunctionSpec, s: float, z,
                 quad: Optional[SphereQuadrature] = None,
                 cfg: Optional[IntegrationConfig] = None,
                 with_moment: bool = True) -> PolarIntegral:
    """Gradient of Phi at z from the spherical formula, plus the polar moment
    m(z) = int y L_s(shift(f, z))(y) dy from the grid oracle.

    The two are parallel with positive proportionality constant d+s+1
    (fitted against finite differences), and vanish together at the
    minimizer of Phi.
    """
    d = spec.dimension
    quad = quad or default_quadrature(d, s)
    h = _shifted_support(spec, s, z, quad)
    with np.errstate(over="ignore"):
        value = s / (2.0 * (d + s)) * float(np.sum(quad.weights * h ** (-(d + s))))
    grad = 0.5 * s * (quad.nodes[:, :d].T @ (quad.weights * h ** (-(d + s + 1))))
    moment = None
    if with_moment:
        _, moment = polar_moment(spec, s, z, cfg)
    return PolarIntegral(value, "sphere", gradient=grad, moment=moment,
                         nodes=len(quad.nodes))


def _polar_box(spec, z):
    rm, rp = funcmodel.axis_extents(spec, np.asarray(z, dtype=float))
    return -1.0 / rm, 1.0 / rp


def phi_oracle(spec: funcmodel.FunctionSpec, s: float, z,
               cfg: Optional[IntegrationConfig] = None) -> PolarIntegral:
    """Brute-force Phi(z): midpoint integration of L_s(shift(f, z)) over the
    exact bounding box of its support, with Richardson extrapolation."""
    cfg = cfg or IntegrationConfig()
    d = spec.dimension
    z = np.asarray(z, dtype=float)
    lo, hi = _polar_box(spec, z)
    n = cfg.resolution if cfg.resolution is not None else _ORACLE_RES[d]
    ev = transforms.SPolarEvaluator(spec, s, tuple(z))
    value, err = richardson_box(ev, lo, hi, n)
    return PolarIntegral(value, "oracle", err_est=err, nodes=(2 * n) ** d)


def polar_moment(spec: funcmodel.FunctionSpec, s: float, z,
                 cfg: Optional[IntegrationConfig] = None):
    """(mass, first moment) of L_s(shift(f, z)) by the grid oracle."""
    cfg = cfg or IntegrationConfig()
    d = spec.dimension
    z = np.asarray(z, dtype=float)
    lo, hi = _polar_box(spec, z)
    n = cfg.resolution if cfg.resolution is not None else _ORACLE_RES[d]
    ev = transforms.SPolarEvaluator(spec, s, tuple(z))
    from .integration import _midpoint_chunks

    mass = 0.0
    mom = np.zeros(d)
    for Y, cell in _midpoint_chunks(lo, hi, 2 * n):
        v = ev(Y)
        mass += float(np.sum(v)) * cell
        mom += (v @ Y) * cell
    return mass, mom


# ---------------------------------------------------------------------------
# log-concave analogue


_LOG_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _log_polar_nodes(spec: funcmodel.FunctionSpec,
                     cfg: Optional[IntegrationConfig] = None):
    """Cached (nodes Y, cell-weighted values of L_inf f at Y)."""
    cached = _LOG_CACHE.get(spec)
    if cached is not None:
        return cached
    cfg = cfg or IntegrationConfig()
    d = spec.dimension
    peak = 1.0 / funcmodel.sup_value(spec)
    radius = 1.0
    for _ in range(40):
        corners = radius * np.stack(np.meshgrid(*([np.array([-1.0, 1.0])] * d),
                                                indexing="ij"), axis=-1).reshape(-1, d)
        probes = np.concatenate([corners, radius * np.eye(d), -radius * np.eye(d)])
        vals = transforms.log_polar_batch(spec, probes)
        if vals.max() < cfg.eps_tail * peak:
            break
        radius *= 2.0
    else:
        raise NumericError("polar of the spec does not decay (non-integrable?)")
    n = cfg.resolution if cfg.resolution is not None else _LOG_GRID_RES[d]
    h = 2.0 * radius / n
    axes = [(-radius + h * (np.arange(n) + 0.5)) for _ in range(d)]
    mesh = np.meshgrid(*axes, indexing="ij")
    Y = np.stack([m.ravel() for m in mesh], axis=1)
    g = transforms.log_polar_batch(spec, Y)
    keep = g > cfg.eps_tail * peak * 1e-3
    Y = Y[keep]
    gw = g[keep] * h**d
    _LOG_CACHE[spec] = (Y, gw)
    return Y, gw


def phi_log(spec: funcmodel.FunctionSpec, z,
            cfg: Optional[IntegrationConfig] = None) -> float:
    """Phi_inf(z) = int L_inf(shift(f, z)) = int e^{<z,y>} L_inf f(y) dy."""
    Y, gw = _log_polar_nodes(spec, cfg)
    z = np.asarray(z, dtype=float)
    val = float(np.sum(gw * np.exp(Y @ z)))
    if not math.isfinite(val):
        raise NumericError("Phi_inf diverged at this center")
    return val


def phi_log_gradient(spec: funcmodel.FunctionSpec, z,
                     cfg: Optional[IntegrationConfig] = None) -> np.ndarray:
    """Gradient of Phi_inf at z; equals the first moment of L_inf(shift(f,z))."""
    Y, gw = _log_polar_nodes(spec, cfg)
    z = np.asarray(z, dtype=float)
    e = gw * np.exp(Y @ z)
    return Y.T @ e
