"""Adaptive one-dimensional quadrature with certified truncation.

Every integral in the library is one-dimensional (radial reduction happens
before anything reaches this module) and routes through here: finite
intervals, semi-infinite ranges truncated according to decay metadata, and
dyadic-shell decompositions.

The core rule is a Gauss-Kronrod 7/15 pair per panel with adaptive panel
bisection; the per-panel error estimate is the G7/K15 difference.  Integrands
must be numpy-vectorized (they are evaluated on batches of nodes), and may
return a matrix to integrate a whole family of integrands over shared panels
in one pass.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy.special import erfc, gammaincc

__all__ = [
    "Decay",
    "QuadratureSpec",
    "IntegralResult",
    "DivergentIntegralError",
    "QuadratureNonConvergence",
    "integrate_finite",
    "integrate_finite_batch",
    "integrate_semi_infinite",
    "integrate_semi_infinite_batch",
    "integrate_dyadic_shells",
    "select_cutoff",
]

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (positive half, outermost
# first).  Kronrod nodes interlace the embedded Gauss-7 nodes, which sit at the
# odd positions of the sorted 15-node array.
_XK_POS = np.array(
    [
        0.991455371120813,
        0.949107912342759,
        0.864864423359769,
        0.741531185599394,
        0.586087235467691,
        0.405845151377397,
        0.207784955007898,
    ]
)
_WK_POS = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
    ]
)
_WK_CENTER = 0.209482141084728
_WG_HALF = np.array([0.129484966168870, 0.279705391489277, 0.381830050505119])
_WG_CENTER = 0.417959183673469

_NODES = np.concatenate([-_XK_POS, [0.0], _XK_POS[::-1]])
_WK = np.concatenate([_WK_POS, [_WK_CENTER], _WK_POS[::-1]])
_WG = np.concatenate([_WG_HALF, [_WG_CENTER], _WG_HALF[::-1]])  # rows 1,3,..,13


class DivergentIntegralError(ValueError):
    """The integral is divergent (or its decay metadata cannot certify a tail)."""


class QuadratureNonConvergence(RuntimeError):
    """Adaptive refinement hit the panel budget before meeting the tolerance.

    Carries the best available estimates so callers can decide whether the
    partial answer is usable.
    """

    def __init__(self, message: str, results: "list[IntegralResult]"):
        super().__init__(message)
        self.results = results


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for adaptive integration.

    ``abs_tol`` also drives the truncation policy: semi-infinite cutoffs are
    chosen so the certified tail bound stays below half of it.
    """

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_panels: int = 4000

    def __post_init__(self) -> None:
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_panels < 4:
            raise ValueError("max_panels too small")

    @classmethod
    def from_dict(cls, data: dict) -> "QuadratureSpec":
        known = {k: data[k] for k in ("rel_tol", "abs_tol", "max_panels") if k in data}
        return cls(**known)


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    """Value of an integral plus its internal error estimate and tail bound.

    ``tail_bound`` is zero for finite intervals; for semi-infinite ranges it
    bounds the discarded mass beyond the truncation radius.
    """

    value: float
    error_estimate: float
    tail_bound: float = 0.0


# ---------------------------------------------------------------------------
# Decay metadata
# ---------------------------------------------------------------------------

_KIND_RANK = {"power": 0, "exponential": 1, "gaussian": 2, "compact": 3}


@dataclass(frozen=True)
class Decay:
    """Envelope metadata for the tail of a function on [0, inf).

    The envelope is valid for r >= radius:

    * ``gaussian``:     r**exponent * exp(-rate * r**2)
    * ``exponential``:  r**exponent * exp(-rate * r)
    * ``power``:        r**exponent          (exponent < -1 for integrability)
    * ``compact``:      identically zero beyond ``radius``

    ``exponent`` is polynomial slack; it participates in the closed-form tail
    integrals so weights like r**(2*gamma+d-1) are tracked exactly.
    """

    kind: str
    rate: float = 1.0
    exponent: float = 0.0
    radius: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown decay kind {self.kind!r}")
        if self.kind in ("gaussian", "exponential") and self.rate <= 0:
            raise ValueError("decay rate must be positive")
        if self.radius < 0:
            raise ValueError("decay radius must be nonnegative")

    # -- constructors -------------------------------------------------------
    @staticmethod
    def gaussian(rate: float = 0.5, radius: float = 1.0, exponent: float = 0.0) -> "Decay":
        return Decay("gaussian", rate=rate, exponent=exponent, radius=radius)

    @staticmethod
    def exponential(rate: float = 1.0, radius: float = 1.0, exponent: float = 0.0) -> "Decay":
        return Decay("exponential", rate=rate, exponent=exponent, radius=radius)

    @staticmethod
    def power(exponent: float, radius: float = 1.0) -> "Decay":
        return Decay("power", exponent=exponent, radius=max(radius, 1e-12))

    @staticmethod
    def compact(radius: float) -> "Decay":
        return Decay("compact", radius=radius)

    # -- algebra ------------------------------------------------------------
    def powered(self, p: float) -> "Decay":
        """Envelope of |f|**p given the envelope of f."""
        if self.kind == "compact":
            return self
        if self.kind == "power":
            return replace(self, exponent=self.exponent * p)
        return replace(self, rate=self.rate * p, exponent=self.exponent * p)

    def times_power(self, m: float) -> "Decay":
        """Envelope of r**m * f(r)."""
        if self.kind == "compact":
            return self
        return replace(self, exponent=self.exponent + m)

    def scaled_argument(self, s: float) -> "Decay":
        """Envelope of r -> f(s*r) for s > 0."""
        if s <= 0:
            raise ValueError("scale must be positive")
        if self.kind == "compact":
            return Decay.compact(self.radius / s)
        if self.kind == "gaussian":
            return Decay("gaussian", rate=self.rate * s * s, exponent=self.exponent, radius=self.radius / s)
        if self.kind == "exponential":
            return Decay("exponential", rate=self.rate * s, exponent=self.exponent, radius=self.radius / s)
        return Decay("power", exponent=self.exponent, radius=max(self.radius / s, 1e-12))

    def product(self, other: "Decay") -> "Decay":
        """Envelope of a pointwise product f*g."""
        a, b = self, other
        if a.kind == "compact" or b.kind == "compact":
            radii = [d.radius for d in (a, b) if d.kind == "compact"]
            return Decay.compact(min(radii))
        if _KIND_RANK[a.kind] < _KIND_RANK[b.kind]:
            a, b = b, a
        # now a is the faster kind
        radius = max(a.radius, b.radius)
        exponent = a.exponent + b.exponent
        if a.kind == b.kind:
            if a.kind == "power":
                return Decay.power(exponent, radius=radius)
            return Decay(a.kind, rate=a.rate + b.rate, exponent=exponent, radius=radius)
        if b.kind == "power":
            exponent = a.exponent + b.exponent
            return Decay(a.kind, rate=a.rate, exponent=exponent, radius=radius)
        # gaussian * exponential: keep the gaussian rate, drop the helpful
        # exponential factor (conservative).
        return Decay(a.kind, rate=a.rate, exponent=exponent, radius=radius)

    def slowest(self, other: "Decay") -> "Decay":
        """Conservative envelope for a sum f+g: the slower of the two."""
        a, b = self, other
        if _KIND_RANK[a.kind] != _KIND_RANK[b.kind]:
            slow = a if _KIND_RANK[a.kind] < _KIND_RANK[b.kind] else b
            return replace(slow, radius=max(a.radius, b.radius))
        radius = max(a.radius, b.radius)
        exponent = max(a.exponent, b.exponent)
        if a.kind == "power":
            return Decay.power(exponent, radius=radius)
        if a.kind == "compact":
            return Decay.compact(radius)
        return Decay(a.kind, rate=min(a.rate, b.rate), exponent=exponent, radius=radius)

    # -- evaluation ---------------------------------------------------------
    def envelope(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.kind == "compact":
            return np.where(r <= self.radius, 1.0, 0.0)
        if self.kind == "power":
            return r**self.exponent
        if self.kind == "gaussian":
            return r**self.exponent * np.exp(-self.rate * r * r)
        return r**self.exponent * np.exp(-self.rate * r)

    def tail_integral(self, R: float) -> float:
        """Closed-form bound for the integral of the envelope over [R, inf)."""
        m = self.exponent
        if self.kind == "compact":
            return 0.0
        if self.kind == "power":
            if m >= -1:
                raise DivergentIntegralError(
                    f"power tail with exponent {m} >= -1 is not integrable"
                )
            return R ** (m + 1) / (-m - 1)
        if R <= 0:
            R = 1e-300
        if self.kind == "gaussian":
            a = self.rate
            if m > 0:
                s = 0.5 * (m + 1)
                return 0.5 * a ** (-s) * math.gamma(s) * float(gammaincc(s, a * R * R))
            return R**m * 0.5 * math.sqrt(math.pi / a) * float(erfc(math.sqrt(a) * R))
        a = self.rate
        if m > 0:
            s = m + 1
            return a ** (-s) * math.gamma(s) * float(gammaincc(s, a * R))
        return R**m * math.exp(-a * R) / a


# ---------------------------------------------------------------------------
# Core adaptive machinery
# ---------------------------------------------------------------------------


def _initial_cells(
    a: float,
    b: float,
    breakpoints: Sequence[float],
    max_panel_width: float | None,
    max_panels: int,
) -> list[tuple[float, float]]:
    pts = sorted({a, b, *(p for p in breakpoints if a < p < b)})
    cells: list[tuple[float, float]] = []
    for lo, hi in zip(pts[:-1], pts[1:]):
        if max_panel_width is not None and hi - lo > max_panel_width:
            n = int(math.ceil((hi - lo) / max_panel_width))
            if len(cells) + n > max_panels:
                raise ValueError(
                    "oscillation cap requires more initial panels than max_panels; "
                    "raise max_panels or loosen the cap"
                )
            edges = np.linspace(lo, hi, n + 1)
            cells.extend(zip(edges[:-1], edges[1:]))
        else:
            cells.append((lo, hi))
    return cells


def _eval_cells(
    f: Callable[[np.ndarray], np.ndarray],
    cells: Sequence[tuple[float, float]],
    m: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate the GK pair on every cell in a single vectorized call.

    Returns (values, errors), each of shape (ncells, m).
    """
    cells_arr = np.asarray(cells, dtype=float)
    centers = 0.5 * (cells_arr[:, 0] + cells_arr[:, 1])
    halves = 0.5 * (cells_arr[:, 1] - cells_arr[:, 0])
    nodes = centers[:, None] + halves[:, None] * _NODES[None, :]
    raw = np.asarray(f(nodes.ravel()), dtype=float)
    vals = raw.reshape(len(cells), 15, m) if m > 1 else raw.reshape(len(cells), 15, 1)
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand returned non-finite values")
    vk = halves[:, None] * np.einsum("i,cij->cj", _WK, vals)
    vg = halves[:, None] * np.einsum("i,cij->cj", _WG, vals[:, 1::2, :])
    return vk, np.abs(vk - vg)


def _adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    cells: list[tuple[float, float]],
    spec: QuadratureSpec,
    m: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Adaptive bisection over an initial cell list; returns (values, errors)."""
    vals, errs = _eval_cells(f, cells, m)
    store: dict[int, tuple[float, float, np.ndarray, np.ndarray]] = {}
    heap: list[tuple[float, int, int]] = []
    counter = itertools.count()
    for (lo, hi), v, e in zip(cells, vals, errs):
        idx = next(counter)
        store[idx] = (lo, hi, v, e)
        heapq.heappush(heap, (-float(e.max()), idx, idx))
    totals = vals.sum(axis=0)
    toterr = errs.sum(axis=0)

    def _converged() -> bool:
        denom = np.maximum(spec.abs_tol, spec.rel_tol * np.abs(totals))
        return bool(np.all(toterr <= denom))

    while not _converged():
        if len(store) >= spec.max_panels:
            results = _finalize(store, toterr, m)
            raise QuadratureNonConvergence(
                f"no convergence after {len(store)} panels "
                f"(error {float(toterr.max()):.3e})",
                results,
            )
        _, _, idx = heapq.heappop(heap)
        if idx not in store:
            continue
        lo, hi, v, e = store.pop(idx)
        totals -= v
        toterr -= e
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # interval at floating-point resolution; accept its estimate
            idx2 = next(counter)
            store[idx2] = (lo, hi, v, np.zeros_like(e))
            continue
        sub_vals, sub_errs = _eval_cells(f, [(lo, mid), (mid, hi)], m)
        for (slo, shi), sv, se in zip(((lo, mid), (mid, hi)), sub_vals, sub_errs):
            idx2 = next(counter)
            store[idx2] = (slo, shi, sv, se)
            heapq.heappush(heap, (-float(se.max()), idx2, idx2))
        totals = totals + sub_vals.sum(axis=0)
        toterr = toterr + sub_errs.sum(axis=0)

    # deterministic final summation order: left-to-right
    ordered = sorted(store.values(), key=lambda t: t[0])
    values = np.sum([t[2] for t in ordered], axis=0)
    errors = np.sum([t[3] for t in ordered], axis=0)
    return values, errors


def _finalize(store, toterr, m) -> list[IntegralResult]:
    ordered = sorted(store.values(), key=lambda t: t[0])
    values = np.sum([t[2] for t in ordered], axis=0)
    return [IntegralResult(float(values[j]), float(toterr[j])) for j in range(m)]


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------


def integrate_finite(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    spec: QuadratureSpec | None = None,
    *,
    max_panel_width: float | None = None,
    breakpoints: Sequence[float] = (),
) -> IntegralResult:
    """Integrate a vectorized integrand over [a, b].

    ``breakpoints`` become initial panel boundaries (for integrands with
    kinks or jumps); ``max_panel_width`` caps the panel length, which keeps
    the G7/K15 error estimate valid for oscillatory integrands.
    """
    spec = spec or DEFAULT_SPEC
    if b < a:
        raise ValueError("require a <= b")
    if b == a:
        return IntegralResult(0.0, 0.0)
    cells = _initial_cells(a, b, breakpoints, max_panel_width, spec.max_panels)
    values, errors = _adaptive(f, cells, spec, m=1)
    return IntegralResult(float(values[0]), float(errors[0]))


def integrate_finite_batch(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    size: int,
    spec: QuadratureSpec | None = None,
    *,
    max_panel_width: float | None = None,
    breakpoints: Sequence[float] = (),
) -> list[IntegralResult]:
    """Integrate a family of integrands sharing adaptive panels.

    ``f`` maps a node array of shape (n,) to a matrix of shape (n, size); the
    panels refine until every member meets the tolerance.
    """
    spec = spec or DEFAULT_SPEC
    if b < a:
        raise ValueError("require a <= b")
    if b == a:
        return [IntegralResult(0.0, 0.0) for _ in range(size)]
    cells = _initial_cells(a, b, breakpoints, max_panel_width, spec.max_panels)
    values, errors = _adaptive(f, cells, spec, m=size)
    return [IntegralResult(float(values[j]), float(errors[j])) for j in range(size)]


def select_cutoff(
    decay: Decay,
    spec: QuadratureSpec,
    *,
    lower: float = 0.0,
    gauge: Callable[[np.ndarray], np.ndarray] | None = None,
) -> tuple[float, float]:
    """Choose a truncation radius R with a certified tail bound below tolerance.

    The amplitude of the integrand relative to the decay envelope is sampled
    at a few radii beyond each candidate cutoff (``gauge`` defaults to nothing,
    i.e. unit amplitude), then the closed-form envelope tail is scaled by it.
    The target is the absolute floor or the relative size of the integral
    itself (estimated from the envelope mass), whichever is larger, so
    integrals with tiny values keep their relative accuracy.  Returns
    (R, tail_bound); the tail may stay above the target for very slowly
    decaying envelopes — it is reported, not hidden.
    """
    if decay.kind == "compact":
        return max(lower, decay.radius), 0.0
    if decay.kind == "power" and decay.exponent >= -1:
        raise DivergentIntegralError(
            f"power decay with exponent {decay.exponent} >= -1: divergent tail"
        )
    R = max(lower, decay.radius, 1e-6)
    amp0 = _amplitude(gauge, decay, R)
    scale_estimate = amp0 * decay.tail_integral(R)
    target = max(0.5 * spec.abs_tol, 0.25 * spec.rel_tol * scale_estimate)
    tail = math.inf
    for _ in range(200):
        amp = _amplitude(gauge, decay, R)
        tail = amp * decay.tail_integral(R)
        if tail <= target:
            return R, tail
        R *= 1.4
        if not math.isfinite(R):
            break
    return R, tail


def _amplitude(gauge, decay: Decay, R: float) -> float:
    if gauge is None:
        return 1.0
    radii = R * np.array([1.0, 1.37, 1.93, 2.51])
    env = decay.envelope(radii)
    try:
        gv = np.abs(np.asarray(gauge(radii), dtype=float))
    except Exception:
        return 1.0
    if gv.ndim > 1:
        gv = gv.max(axis=tuple(range(1, gv.ndim)))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(env > 0, gv / env, np.where(gv > 0, np.inf, 0.0))
    amp = float(np.max(ratios))
    if not math.isfinite(amp):
        return 1.0
    return 2.0 * max(amp, 1e-300)


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    decay: Decay,
    spec: QuadratureSpec | None = None,
    *,
    lower: float = 0.0,
    max_panel_width: float | None = None,
    breakpoints: Sequence[float] = (),
    tail_gauge: Callable[[np.ndarray], np.ndarray] | None = None,
) -> IntegralResult:
    """Integrate over [lower, inf): finite part plus a certified tail bound.

    The cutoff comes from the decay metadata; power decay with exponent >= -1
    raises :class:`DivergentIntegralError`.
    """
    spec = spec or DEFAULT_SPEC
    gauge = tail_gauge if tail_gauge is not None else f
    R, tail = select_cutoff(decay, spec, lower=lower, gauge=gauge)
    if R <= lower:
        return IntegralResult(0.0, 0.0, tail)
    res = integrate_finite(
        f, lower, R, spec, max_panel_width=max_panel_width, breakpoints=breakpoints
    )
    return IntegralResult(res.value, res.error_estimate, tail)


def integrate_semi_infinite_batch(
    f: Callable[[np.ndarray], np.ndarray],
    decay: Decay,
    size: int,
    spec: QuadratureSpec | None = None,
    *,
    lower: float = 0.0,
    max_panel_width: float | None = None,
    breakpoints: Sequence[float] = (),
    tail_gauge: Callable[[np.ndarray], np.ndarray] | None = None,
) -> list[IntegralResult]:
    """Batch variant of :func:`integrate_semi_infinite` over shared panels."""
    spec = spec or DEFAULT_SPEC
    gauge = tail_gauge if tail_gauge is not None else f
    R, tail = select_cutoff(decay, spec, lower=lower, gauge=gauge)
    if R <= lower:
        return [IntegralResult(0.0, 0.0, tail) for _ in range(size)]
    results = integrate_finite_batch(
        f, lower, R, size, spec, max_panel_width=max_panel_width, breakpoints=breakpoints
    )
    return [IntegralResult(r.value, r.error_estimate, tail) for r in results]


def integrate_dyadic_shells(
    f: Callable[[np.ndarray], np.ndarray],
    j_min: int,
    j_max: int,
    spec: QuadratureSpec | None = None,
    *,
    breakpoints: Sequence[float] = (),
) -> list[IntegralResult]:
    """Integrate f over each dyadic shell [2**(j-1), 2**j], j = j_min..j_max."""
    if j_min > j_max:
        raise ValueError("require j_min <= j_max")
    spec = spec or DEFAULT_SPEC
    out = []
    for j in range(j_min, j_max + 1):
        out.append(
            integrate_finite(f, 2.0 ** (j - 1), 2.0**j, spec, breakpoints=breakpoints)
        )
    return out
