"""Radial profiles: a function F on [0, inf) plus decay metadata.

A radial function f on R^d is represented by its profile F with f(x) =
F(||x||).  The decay tag feeds the quadrature truncation policy, the
smoothness tag and breakpoints feed panel placement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import erf

from .quadrature import Decay

__all__ = [
    "RadialProfile",
    "gaussian_profile",
    "exponential_profile",
    "indicator_profile",
    "smoothed_indicator_profile",
    "power_profile",
    "zero_profile",
    "dilate_profile",
    "combine_profiles",
    "scale_profile",
    "profile_from_config",
    "check_decay_tag",
]


@dataclass(frozen=True)
class RadialProfile:
    """A radial function via its profile on [0, inf).

    ``func`` must be numpy-vectorized.  ``breakpoints`` list radii where the
    profile (or a derivative) jumps, so quadrature panels can align with them.
    """

    func: Callable[[np.ndarray], np.ndarray]
    decay: Decay
    smoothness: str = "continuous"
    breakpoints: tuple[float, ...] = ()
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, r):
        return self.func(np.asarray(r, dtype=float))


def gaussian_profile(sigma: float = 1.0) -> RadialProfile:
    """F(r) = exp(-r^2 / (2 sigma^2))."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    s2 = 2.0 * sigma * sigma
    return RadialProfile(
        func=lambda r: np.exp(-(r * r) / s2),
        decay=Decay.gaussian(rate=1.0 / s2, radius=sigma),
        smoothness="smooth",
        name=f"gaussian({sigma:g})",
    )


def exponential_profile(lam: float = 1.0) -> RadialProfile:
    """F(r) = exp(-lam * r)."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    return RadialProfile(
        func=lambda r: np.exp(-lam * r),
        decay=Decay.exponential(rate=lam, radius=1.0 / lam),
        smoothness="smooth",
        name=f"exp({lam:g})",
    )


def indicator_profile(a: float, b: float) -> RadialProfile:
    """F(r) = 1 on [a, b], 0 elsewhere."""
    if not (0 <= a < b):
        raise ValueError("require 0 <= a < b")
    return RadialProfile(
        func=lambda r: np.where((r >= a) & (r <= b), 1.0, 0.0),
        decay=Decay.compact(b),
        smoothness="piecewise",
        breakpoints=(a, b) if a > 0 else (b,),
        name=f"indicator({a:g},{b:g})",
    )


def smoothed_indicator_profile(b: float = 1.0, width: float = 0.25) -> RadialProfile:
    """Ball indicator of radius b mollified by a Gaussian of scale ``width``.

    Smooth, with Gaussian tails; the envelope exp(-r^2/(4 w^2)) is valid once
    r exceeds max(3.5 b, b + 6 w).
    """
    if b <= 0 or width <= 0:
        raise ValueError("b and width must be positive")
    c = 1.0 / (math.sqrt(2.0) * width)

    def _f(r):
        return 0.5 * (erf((b - r) * c) + erf((b + r) * c))

    return RadialProfile(
        func=_f,
        decay=Decay.gaussian(rate=1.0 / (4.0 * width * width), radius=max(3.5 * b, b + 6 * width)),
        smoothness="smooth",
        name=f"smoothed_indicator({b:g},{width:g})",
    )


def power_profile(a: float, cutoff: float = 1.0) -> RadialProfile:
    """F(r) = r**(-a) for r > cutoff, 0 otherwise."""
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")

    def _f(r):
        with np.errstate(divide="ignore"):
            vals = np.where(r > cutoff, r, np.inf) ** (-a)
        return vals

    return RadialProfile(
        func=_f,
        decay=Decay.power(exponent=-a, radius=cutoff),
        smoothness="piecewise",
        breakpoints=(cutoff,),
        name=f"power({a:g},{cutoff:g})",
    )


def zero_profile() -> RadialProfile:
    return RadialProfile(
        func=lambda r: np.zeros_like(np.asarray(r, dtype=float)),
        decay=Decay.compact(1.0),
        smoothness="smooth",
        name="zero",
    )


def dilate_profile(profile: RadialProfile, lam: float) -> RadialProfile:
    """Profile of r -> F(r / lam)."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    return RadialProfile(
        func=lambda r: profile.func(np.asarray(r, dtype=float) / lam),
        decay=profile.decay.scaled_argument(1.0 / lam),
        smoothness=profile.smoothness,
        breakpoints=tuple(lam * b for b in profile.breakpoints),
        name=f"dilate({profile.name},{lam:g})",
    )


def scale_profile(c: float, profile: RadialProfile) -> RadialProfile:
    """Profile of r -> c * F(r)."""
    return RadialProfile(
        func=lambda r: c * profile.func(np.asarray(r, dtype=float)),
        decay=profile.decay,
        smoothness=profile.smoothness,
        breakpoints=profile.breakpoints,
        name=f"scale({c:g},{profile.name})",
    )


def combine_profiles(a: float, F: RadialProfile, b: float, G: RadialProfile) -> RadialProfile:
    """Profile of a*F + b*G with a conservative (slower) decay tag."""
    return RadialProfile(
        func=lambda r: a * F.func(np.asarray(r, dtype=float)) + b * G.func(np.asarray(r, dtype=float)),
        decay=F.decay.slowest(G.decay),
        smoothness="piecewise"
        if "piecewise" in (F.smoothness, G.smoothness)
        else "smooth",
        breakpoints=tuple(sorted({*F.breakpoints, *G.breakpoints})),
        name=f"combine({a:g}*{F.name},{b:g}*{G.name})",
    )


_REGISTRY = {
    "gaussian": (gaussian_profile, ("sigma",)),
    "exp": (exponential_profile, ("lam",)),
    "indicator": (indicator_profile, ("a", "b")),
    "smoothed_indicator": (smoothed_indicator_profile, ("b", "width")),
    "power": (power_profile, ("a", "cutoff")),
    "zero": (zero_profile, ()),
}


def profile_from_config(config: dict | str) -> RadialProfile:
    """Build a named profile from config, e.g. {"name": "gaussian", "sigma": 1}.

    A plain string like ``"gaussian:1.0"`` or ``"indicator:1,2"`` is also
    accepted (positional arguments after the colon).
    """
    if isinstance(config, str):
        name, _, argstr = config.partition(":")
        args = [float(v) for v in argstr.split(",")] if argstr else []
        if name not in _REGISTRY:
            raise ValueError(f"unknown profile {name!r}")
        fn, keys = _REGISTRY[name]
        return fn(*args)
    cfg = dict(config)
    name = cfg.pop("name")
    if name not in _REGISTRY:
        raise ValueError(f"unknown profile {name!r}")
    fn, keys = _REGISTRY[name]
    unknown = set(cfg) - set(keys)
    if unknown:
        raise ValueError(f"unknown profile parameters {sorted(unknown)} for {name!r}")
    return fn(**cfg)


def check_decay_tag(profile: RadialProfile, factors=(1.5, 2.5, 4.0)) -> float:
    """Spot-check that the decay tag is honest beyond its validity radius.

    Returns the maximum of |F(r)| / envelope(r) over a few radii past the
    cutoff; a bounded, O(1) value means the tag is a fair envelope.
    """
    radii = profile.decay.radius * np.asarray(factors)
    vals = np.abs(profile(radii))
    env = profile.decay.envelope(radii)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(env > 0, vals / env, np.where(vals > 0, np.inf, 0.0))
    return float(np.max(ratios))
