"""Reflection-group model, weight function, and the derived constants.

The coordinate model is the product of d copies of the sign group, with
weight w_k(x) = prod_i |x_i|^(2 k_i), homogeneous of degree 2*gamma with
gamma = sum_i k_i.  Purely radial computations only need (d, gamma), so a
direct gamma override is accepted; derived constants then use the
equidistributed multiplicities (gamma/d, ..., gamma/d), which is the unique
choice consistent with the d = 1 and gamma = 0 limits.

Surface-measure convention: the sphere measure is the standard (unnormalized)
one.  That is the only reading under which the polar radial reduction and the
sphere-weight formula are mutually consistent, and it reproduces the
classical sphere areas at gamma = 0 (regression-tested).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .profiles import RadialProfile
from .quadrature import QuadratureSpec, integrate_semi_infinite

__all__ = [
    "ModelParams",
    "DerivedConstants",
    "weight_wk",
    "mehta_constant",
    "sphere_weight_dk",
    "derived_constants",
    "transform_normalization",
    "lp_norm_radial",
    "weighted_radial_integral",
]


@dataclass(frozen=True)
class ModelParams:
    """Dimension, multiplicities, and the derived homogeneity index gamma.

    Either ``multiplicities`` (coordinate weights) or ``gamma_override``
    (radial-only computations) must be given.
    """

    d: int
    multiplicities: tuple[float, ...] | None = None
    gamma_override: float | None = None

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension d must be >= 1")
        if self.multiplicities is None and self.gamma_override is None:
            raise ValueError("give multiplicities or gamma_override")
        if self.multiplicities is not None:
            if self.gamma_override is not None:
                raise ValueError("give multiplicities or gamma_override, not both")
            object.__setattr__(self, "multiplicities", tuple(float(k) for k in self.multiplicities))
            if len(self.multiplicities) != self.d:
                raise ValueError("need one multiplicity per coordinate")
            if any(k < 0 for k in self.multiplicities):
                raise ValueError("multiplicities must be nonnegative")
        elif self.gamma_override < 0:
            raise ValueError("gamma must be nonnegative")

    # -- constructors -------------------------------------------------------
    @classmethod
    def product(cls, multiplicities) -> "ModelParams":
        ks = tuple(float(k) for k in multiplicities)
        return cls(d=len(ks), multiplicities=ks)

    @classmethod
    def rank1(cls, k: float) -> "ModelParams":
        return cls(d=1, multiplicities=(float(k),))

    @classmethod
    def radial(cls, d: int, gamma: float) -> "ModelParams":
        return cls(d=d, gamma_override=float(gamma))

    @classmethod
    def from_dict(cls, data: dict) -> "ModelParams":
        d = int(data["d"])
        if "k" in data:
            ks = data["k"]
            if isinstance(ks, (int, float)):
                ks = [ks] * d
            return cls(d=d, multiplicities=tuple(float(v) for v in ks))
        if "gamma" in data:
            return cls(d=d, gamma_override=float(data["gamma"]))
        raise ValueError("model config needs 'k' (list) or 'gamma'")

    # -- derived quantities --------------------------------------------------
    @property
    def gamma(self) -> float:
        if self.multiplicities is not None:
            return float(sum(self.multiplicities))
        return float(self.gamma_override)

    @property
    def has_coordinate_weights(self) -> bool:
        return self.multiplicities is not None

    @property
    def effective_multiplicities(self) -> tuple[float, ...]:
        """Multiplicities used for derived constants (equidistributed if radial-only)."""
        if self.multiplicities is not None:
            return self.multiplicities
        return (self.gamma / self.d,) * self.d

    @property
    def homogeneity_degree(self) -> float:
        """Exponent 2*gamma + d of the weighted volume scaling."""
        return 2.0 * self.gamma + self.d

    @property
    def bessel_order(self) -> float:
        """Order gamma + d/2 - 1 of the radial transform kernel."""
        return self.gamma + 0.5 * self.d - 1.0

    def describe(self) -> dict:
        out = {"d": self.d, "gamma": self.gamma}
        if self.multiplicities is not None:
            out["k"] = list(self.multiplicities)
        return out


@dataclass(frozen=True)
class DerivedConstants:
    """Normalizing constant of the Gaussian weight integral and sphere weight."""

    c_k: float
    d_k: float


def weight_wk(params: ModelParams, x) -> float | np.ndarray:
    """Coordinate weight prod_i |x_i|^(2 k_i) at a point (or batch of points).

    Requires explicit multiplicities; a gamma-only model has no coordinate
    weight.
    """
    if not params.has_coordinate_weights:
        raise ValueError("weight_wk needs explicit multiplicities, not a gamma override")
    pts = np.asarray(x, dtype=float)
    if pts.shape[-1] != params.d:
        raise ValueError(f"points must have {params.d} coordinates")
    ks = np.asarray(params.multiplicities)
    vals = np.prod(np.abs(pts) ** (2.0 * ks), axis=-1)
    return float(vals) if vals.ndim == 0 else vals


def mehta_constant(params: ModelParams) -> float:
    """Normalizing constant c_k = (integral of exp(-||x||^2/2) w_k dx)^(-1).

    Closed form per coordinate: each factor contributes 2^(k+1/2) Gamma(k+1/2).
    """
    inv = 1.0
    for k in params.effective_multiplicities:
        inv *= 2.0 ** (k + 0.5) * math.gamma(k + 0.5)
    return 1.0 / inv


def sphere_weight_dk(params: ModelParams) -> float:
    """Integral of w_k over the unit sphere (standard surface measure).

    Direct closed form 2 * prod_i Gamma(k_i + 1/2) / Gamma(gamma + d/2); the
    consistency of this with the Gaussian-integral route is a tested identity.
    """
    num = 2.0
    for k in params.effective_multiplicities:
        num *= math.gamma(k + 0.5)
    return num / math.gamma(params.gamma + 0.5 * params.d)


def derived_constants(params: ModelParams) -> DerivedConstants:
    return DerivedConstants(c_k=mehta_constant(params), d_k=sphere_weight_dk(params))


def transform_normalization(params: ModelParams) -> float:
    """The product c_k * d_k = 1 / (2^alpha Gamma(alpha+1)), alpha the kernel order.

    Unlike c_k and d_k separately, this depends only on (d, gamma), which is
    what makes radial-only models well-posed for the transform.
    """
    alpha = params.bessel_order
    return 1.0 / (2.0**alpha * math.gamma(alpha + 1.0))


def weighted_radial_integral(
    params: ModelParams,
    integrand,
    decay,
    spec: QuadratureSpec | None = None,
    *,
    lower: float = 0.0,
    max_panel_width: float | None = None,
    breakpoints=(),
    tail_gauge=None,
):
    """d_k * integral of f(r) r^(2 gamma + d - 1) dr over [lower, inf).

    Polar reduction of the weighted integral of f(||x||) over R^d.  The
    caller supplies f(r) alone; the radial weight r^(2 gamma + d - 1) and the
    sphere constant d_k are applied here, and the decay metadata is adjusted
    for the weight automatically.
    """
    m = params.homogeneity_degree - 1.0

    def full(r):
        return integrand(r) * r**m

    res = integrate_semi_infinite(
        full,
        decay.times_power(m),
        spec,
        lower=lower,
        max_panel_width=max_panel_width,
        breakpoints=breakpoints,
        tail_gauge=tail_gauge,
    )
    dk = sphere_weight_dk(params)
    from .quadrature import IntegralResult

    return IntegralResult(dk * res.value, dk * res.error_estimate, dk * res.tail_bound)


def lp_norm_radial(
    params: ModelParams,
    profile: RadialProfile,
    p: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Weighted L^p norm of a radial function from its profile.

    Computes (d_k * integral |F(r)|^p r^(2 gamma + d - 1) dr)^(1/p).  A
    non-integrable tail raises :class:`DivergentIntegralError`.
    """
    if p < 1:
        raise ValueError("p must be >= 1")

    def integrand(r):
        return np.abs(profile(r)) ** p

    res = weighted_radial_integral(
        params,
        integrand,
        profile.decay.powered(p),
        spec,
        breakpoints=profile.breakpoints,
    )
    return res.value ** (1.0 / p)
