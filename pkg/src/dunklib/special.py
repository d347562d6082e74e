"""Gamma, the normalized Bessel function, and the rank-1 kernel.

The normalized Bessel function j_alpha (j_alpha(0) = 1) is evaluated from its
cosine integral representation

    j_alpha(x) = Gamma(a+1)/(sqrt(pi) Gamma(a+1/2)) *
                 int_{-1}^{1} (1-t^2)^(a-1/2) cos(x t) dt,   a > -1/2,

by Gauss-Jacobi quadrature whose weight absorbs the endpoint singularity
exactly, with a power series near zero and a large-argument asymptotic
expansion.  The order a = -1/2 is the closed-form limit cos(x).

The rank-1 kernel has two independent evaluation routes: the Bessel closed
form (production) and direct integration of the defining first-order
differential-difference system (oracle); their agreement is an acceptance
gate before the closed form is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import roots_jacobi

from .geometry import ModelParams, sphere_weight_dk

__all__ = [
    "BesselOrder",
    "gamma_fn",
    "bessel_normalized",
    "bessel_normalized_minus_one",
    "kernel_sphere_average",
    "rank1_dunkl_kernel",
    "rank1_kernel_ode",
]

_SERIES_CUT = 0.5
_ASYMPTOTIC_CUT = 50.0


@dataclass(frozen=True)
class BesselOrder:
    """Order of the normalized Bessel function; requires alpha >= -1/2.

    The integral representation needs alpha > -1/2 strictly; alpha = -1/2 is
    handled as the closed-form limit cos(x).
    """

    alpha: float

    def __post_init__(self) -> None:
        if self.alpha < -0.5:
            raise ValueError("Bessel order must satisfy alpha >= -1/2")


def gamma_fn(x: float) -> float:
    """Gamma function for positive real arguments."""
    if x <= 0:
        raise ValueError("gamma_fn requires a positive argument")
    return math.gamma(x)


def _as_order(alpha) -> float:
    if isinstance(alpha, BesselOrder):
        return alpha.alpha
    return BesselOrder(float(alpha)).alpha


def _series(alpha: float, x: np.ndarray) -> np.ndarray:
    """Power series sum_m (-x^2/4)^m / (m! (alpha+1)_m); |x| small."""
    z = -0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for m in range(1, 40):
        term = term * z / (m * (alpha + m))
        total = total + term
        if np.max(np.abs(term)) < 1e-17:
            break
    return total


def _series_minus_one(alpha: float, x: np.ndarray) -> np.ndarray:
    """j_alpha(x) - 1 summed without the leading 1 (no cancellation)."""
    z = -0.25 * x * x
    term = z / (alpha + 1.0)
    total = term.copy()
    for m in range(2, 40):
        term = term * z / (m * (alpha + m))
        total = total + term
        if np.max(np.abs(term)) < 1e-17 * max(np.max(np.abs(total)), 1e-300):
            break
    return total


@lru_cache(maxsize=256)
def _jacobi_rule(n: int, a_key: float):
    nodes, weights = roots_jacobi(n, a_key, a_key)
    return nodes, weights


def _quadrature(alpha: float, x: np.ndarray) -> np.ndarray:
    """Gauss-Jacobi evaluation of the cosine integral representation.

    The Jacobi weight (1-t^2)^(alpha-1/2) carries the endpoint behavior, so
    the quadrature only has to resolve cos(x t): node count grows linearly
    with the largest argument.
    """
    xmax = float(np.max(np.abs(x))) if x.size else 0.0
    n = 24 + int(math.ceil(0.5 * xmax))
    nodes, weights = _jacobi_rule(n, round(alpha - 0.5, 12))
    pref = math.gamma(alpha + 1.0) / (math.sqrt(math.pi) * math.gamma(alpha + 0.5))
    if x.size * n > 2_000_000:
        out = np.empty_like(x)
        step = max(2_000_000 // n, 1)
        for i in range(0, x.size, step):
            out[i : i + step] = np.cos(np.multiply.outer(x[i : i + step], nodes)) @ weights
        return pref * out
    return pref * (np.cos(np.multiply.outer(x, nodes)) @ weights)


def _asymptotic(alpha: float, x: np.ndarray) -> np.ndarray:
    """Large-argument expansion of J_alpha, renormalized to j_alpha.

    Standard Hankel expansion: J_a(z) ~ sqrt(2/(pi z)) (cos(w) P - sin(w) Q),
    w = z - a pi/2 - pi/4, with P, Q asymptotic series in 1/z.  Truncated at
    the smallest term; for z >= max(50, 4 a^2) that is far below 1e-14.
    """
    z = x
    mu = 4.0 * alpha * alpha
    P = np.ones_like(z)
    Q = np.zeros_like(z)
    term = np.ones_like(z)
    for k in range(1, 30):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        contrib = term * (-1) ** ((k // 2) % 2)
        if k % 2 == 1:
            Q = Q + contrib
        else:
            P = P + contrib
        if np.max(np.abs(term)) < 1e-18:
            break
    w = z - alpha * math.pi / 2.0 - math.pi / 4.0
    J = np.sqrt(2.0 / (math.pi * z)) * (np.cos(w) * P - np.sin(w) * Q)
    return 2.0**alpha * math.gamma(alpha + 1.0) * z ** (-alpha) * J


def bessel_normalized(alpha, x):
    """Normalized Bessel function j_alpha(x); even in x, j_alpha(0) = 1.

    Accepts scalars or arrays.  Bounded by 1 in absolute value for real x.
    """
    a = _as_order(alpha)
    xs = np.abs(np.atleast_1d(np.asarray(x, dtype=float)))
    out = np.empty_like(xs)
    if a == -0.5:
        out[:] = np.cos(xs)
    else:
        small = xs <= _SERIES_CUT
        cut = max(_ASYMPTOTIC_CUT, 4.0 * a * a)
        large = xs >= cut
        mid = ~small & ~large
        if small.any():
            out[small] = _series(a, xs[small])
        if mid.any():
            out[mid] = _quadrature(a, xs[mid])
        if large.any():
            out[large] = _asymptotic(a, xs[large])
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out.reshape(np.shape(x))


def bessel_normalized_minus_one(alpha, x):
    """j_alpha(x) - 1, accurate for small x where direct subtraction cancels."""
    a = _as_order(alpha)
    xs = np.abs(np.atleast_1d(np.asarray(x, dtype=float)))
    out = np.empty_like(xs)
    small = xs <= _SERIES_CUT
    if a == -0.5:
        # cos(x) - 1 = -2 sin^2(x/2), stable everywhere
        out[:] = -2.0 * np.sin(0.5 * xs) ** 2
    else:
        if small.any():
            out[small] = _series_minus_one(a, xs[small])
        rest = ~small
        if rest.any():
            out[rest] = bessel_normalized(a, xs[rest]) - 1.0
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out.reshape(np.shape(x))


def kernel_sphere_average(params: ModelParams, s) -> float | np.ndarray:
    """Weighted sphere average of the kernel at radius s: d_k * j_alpha(s).

    At s = 0 this is d_k, the total sphere weight.
    """
    dk = sphere_weight_dk(params)
    return dk * bessel_normalized(params.bessel_order, s)


def rank1_dunkl_kernel(k: float, x, y):
    """Rank-1 kernel E_k(ix, y) via the Bessel closed form.

    E_k(ix, y) = j_{k-1/2}(xy) + i * xy/(2k+1) * j_{k+1/2}(xy); reduces to
    exp(ixy) at k = 0, is bounded by 1 in modulus, and equals 1 at x = 0.
    """
    if k < 0:
        raise ValueError("multiplicity k must be nonnegative")
    v = np.asarray(x, dtype=float) * np.asarray(y, dtype=float)
    re = bessel_normalized(k - 0.5, v)
    im = v / (2.0 * k + 1.0) * bessel_normalized(k + 0.5, v)
    out = re + 1j * im
    if np.ndim(out) == 0:
        return complex(out)
    return out


def _ode_series_start(k: float, t0: float) -> tuple[float, float]:
    """Series initial data for the split system at small t (y = 1)."""
    b1 = 1.0 / (1.0 + 2.0 * k)
    a2 = -b1 / 2.0
    b3 = a2 / (3.0 + 2.0 * k)
    a4 = -b3 / 4.0
    b5 = a4 / (5.0 + 2.0 * k)
    A = 1.0 + a2 * t0**2 + a4 * t0**4
    B = b1 * t0 + b3 * t0**3 + b5 * t0**5
    return A, B


def rank1_kernel_ode(k: float, v, rtol: float = 1e-11) -> complex | np.ndarray:
    """Oracle: E_k(i, v) by integrating the defining differential-difference system.

    The unique analytic solution u with u(0) = 1 of  u'(t) + k (u(t) - u(-t))/t
    = i u(t)  splits into an even real part A and odd imaginary part B solving
    A' = -B,  B' + 2k B / t = A.  One dense solve per call covers every
    requested argument; independent of the Bessel evaluation path.
    """
    if k < 0:
        raise ValueError("multiplicity k must be nonnegative")
    vs = np.atleast_1d(np.asarray(v, dtype=float))
    out = np.empty(vs.shape, dtype=complex)
    t0 = 1e-4
    vmax = float(np.max(np.abs(vs))) if vs.size else 0.0

    small = np.abs(vs) <= t0
    for idx in np.nonzero(small)[0]:
        A, B = _ode_series_start(k, abs(vs[idx]))
        out[idx] = A + 1j * math.copysign(1.0, vs[idx]) * B

    if vmax > t0:

        def rhs(t, u):
            A, B = u
            return [-B, A - 2.0 * k * B / t]

        A0, B0 = _ode_series_start(k, t0)
        sol = solve_ivp(
            rhs,
            (t0, vmax),
            [A0, B0],
            method="DOP853",
            dense_output=True,
            rtol=rtol,
            atol=1e-14,
        )
        if not sol.success:
            raise RuntimeError(f"kernel ODE integration failed: {sol.message}")
        for idx in np.nonzero(~small)[0]:
            A, B = sol.sol(abs(vs[idx]))
            out[idx] = A + 1j * math.copysign(1.0, vs[idx]) * B

    if np.ndim(v) == 0:
        return complex(out[0])
    return out.reshape(np.shape(v))
