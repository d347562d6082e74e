"""Herz norms over dyadic shells and the generalized Cesaro operator.

The Herz norm stacks shell-wise weighted L^p norms, scaled by 2^(j beta),
into an l^q sum over dyadic shells [2^(j-1), 2^j].  The Cesaro operator

    (C_phi f)(x) = int_0^1 f(x/t) t^(-(2 gamma + d)) phi(t) dt

is evaluated through the substitution v = 1/t, which turns the endpoint
blowup into a plain semi-infinite integral and reduces, for constant phi in
the classical one-dimensional case, to the textbook average
int_x^inf f(y)/y dy.

Its boundedness bracket on the Herz scale is verified as a sandwich: the
condition integral I = int_0^1 t^beta psi(t) dt from below (via an explicit
truncated-power family), and c_{q,beta} * I from above (empirical norm
ratios for a test family), with psi(t) = t^(-(2 gamma + d)(1 - 1/p)) phi(t)
required concave for the upper half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .geometry import ModelParams, sphere_weight_dk
from .profiles import RadialProfile, power_profile
from .quadrature import (
    DEFAULT_SPEC,
    Decay,
    DivergentIntegralError,
    IntegralResult,
    QuadratureNonConvergence,
    QuadratureSpec,
    integrate_finite,
    integrate_finite_batch,
    integrate_semi_infinite_batch,
    select_cutoff,
)

__all__ = [
    "HerzParams",
    "CesaroWeight",
    "ExtremalFamily",
    "HerzNormResult",
    "ConcavityCertificate",
    "LowerProbeReport",
    "SandwichReport",
    "LemmaStats",
    "herz_norm",
    "cesaro_apply",
    "cesaro_profile",
    "cesaro_condition_integral",
    "upper_constant",
    "extremal_herz_norm",
    "operator_norm_lower_probe",
    "sandwich_verify",
    "lemma41_check",
    "lemma42_check",
    "richardson_extrapolate",
]


@dataclass(frozen=True)
class HerzParams:
    """Indices of the shell-weighted space plus the truncated summation range."""

    beta: float
    p: float
    q: float
    j_min: int = -30
    j_max: int = 40

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.p <= 1:
            raise ValueError("p must exceed 1")
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.j_min > self.j_max:
            raise ValueError("empty shell range")


@dataclass(frozen=True)
class ConcavityCertificate:
    """Midpoint-concavity check of psi on a uniform grid of (0, 1]."""

    passed: bool
    min_defect: float
    grid_points: int
    tolerance: float


class CesaroWeight:
    """The averaging weight phi on [0, 1] and its induced psi for given (model, p).

    ``small_t_exponent`` describes phi(t) ~ t^a as t -> 0; it feeds the decay
    bookkeeping of the substituted Cesaro integrand.  Named constructors
    cover the configurable families (const, power, polynomial).
    """

    def __init__(
        self,
        phi: Callable[[np.ndarray], np.ndarray],
        params: ModelParams,
        p: float,
        *,
        name: str = "phi",
        small_t_exponent: float = 0.0,
    ):
        if p <= 1:
            raise ValueError("p must exceed 1")
        self.phi = phi
        self.params = params
        self.p = p
        self.name = name
        self.small_t_exponent = float(small_t_exponent)
        self.psi_exponent_shift = -params.homogeneity_degree * (1.0 - 1.0 / p)

    # -- constructors --------------------------------------------------------
    @classmethod
    def const(cls, params: ModelParams, p: float, value: float = 1.0) -> "CesaroWeight":
        if value < 0:
            raise ValueError("phi must be nonnegative")
        return cls(
            lambda t: np.full_like(np.asarray(t, dtype=float), value),
            params,
            p,
            name=f"const({value:g})",
            small_t_exponent=0.0,
        )

    @classmethod
    def power(cls, params: ModelParams, p: float, a: float) -> "CesaroWeight":
        if a < 0:
            raise ValueError("power exponent must be nonnegative for phi >= 0 on [0,1]")
        return cls(
            lambda t: np.asarray(t, dtype=float) ** a,
            params,
            p,
            name=f"power({a:g})",
            small_t_exponent=a,
        )

    @classmethod
    def poly(cls, params: ModelParams, p: float, coeffs: Sequence[float]) -> "CesaroWeight":
        cs = tuple(float(c) for c in coeffs)

        def phi(t):
            t = np.asarray(t, dtype=float)
            out = np.zeros_like(t)
            for c in reversed(cs):
                out = out * t + c
            return out

        lead = next((i for i, c in enumerate(cs) if c != 0.0), 0)
        return cls(phi, params, p, name=f"poly{cs}", small_t_exponent=float(lead))

    @classmethod
    def from_config(cls, config: dict | str, params: ModelParams, p: float) -> "CesaroWeight":
        if isinstance(config, str):
            name, _, argstr = config.partition(":")
            args = [float(v) for v in argstr.split(",")] if argstr else []
            if name == "const":
                return cls.const(params, p, *args)
            if name == "power":
                return cls.power(params, p, *args)
            if name == "poly":
                return cls.poly(params, p, args)
            raise ValueError(f"unknown phi family {name!r}")
        cfg = dict(config)
        name = cfg.pop("name")
        if name == "const":
            return cls.const(params, p, cfg.get("value", 1.0))
        if name == "power":
            return cls.power(params, p, cfg["a"])
        if name == "poly":
            return cls.poly(params, p, cfg["coeffs"])
        raise ValueError(f"unknown phi family {name!r}")

    # -- derived -------------------------------------------------------------
    def psi(self, t) -> np.ndarray:
        """psi(t) = t^(-(2 gamma + d)(1 - 1/p)) phi(t)."""
        t = np.asarray(t, dtype=float)
        return t**self.psi_exponent_shift * self.phi(t)

    def concavity_certificate(
        self, n: int = 1001, tol: float = 1e-10
    ) -> ConcavityCertificate:
        """Midpoint concavity of psi on a uniform n-point grid of (0, 1]."""
        t = np.linspace(0.0, 1.0, n + 1)[1:]
        vals = self.psi(t)
        defect = vals[1:-1] - 0.5 * (vals[:-2] + vals[2:])
        min_defect = float(defect.min()) if len(defect) else 0.0
        return ConcavityCertificate(
            passed=bool(min_defect >= -tol),
            min_defect=min_defect,
            grid_points=n,
            tolerance=tol,
        )


# ---------------------------------------------------------------------------
# Herz norm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HerzNormResult:
    """Truncated Herz norm with shell diagnostics and a tail residual estimate.

    ``tail_residual`` is the geometric extrapolation of the term sequence
    past both ends of the shell range, relative to the computed sum of q-th
    powers; ``tail_ok`` is false when the terms were still growing at the
    upper end (truncation warning / divergence suspicion).
    """

    value: float
    terms: tuple[float, ...]
    j_min: int
    j_max: int
    tail_residual: float
    tail_ok: bool


def _shell_lp_norm(
    params: ModelParams,
    F: RadialProfile,
    p: float,
    lo: float,
    hi: float,
    spec: QuadratureSpec,
) -> float:
    dk = sphere_weight_dk(params)
    D = params.homogeneity_degree

    def integrand(r):
        return np.abs(F(r)) ** p * r ** (D - 1.0)

    res = integrate_finite(integrand, lo, hi, spec, breakpoints=F.breakpoints)
    return (dk * max(res.value, 0.0)) ** (1.0 / p)


def herz_norm(
    params: ModelParams,
    F: RadialProfile,
    hp: HerzParams,
    spec: QuadratureSpec | None = None,
) -> HerzNormResult:
    """Truncated Herz norm (sum over shells of (2^(j beta) ||F chi_j||_p)^q)^(1/q).

    Shell norms use the radial reduction on [2^(j-1), 2^j]; the residual past
    the truncation range is estimated from the last term's geometric ratio.
    Returns inf (with ``tail_ok`` false) when the upper terms grow.
    """
    spec = spec or DEFAULT_SPEC
    terms = []
    for j in range(hp.j_min, hp.j_max + 1):
        norm_j = _shell_lp_norm(params, F, hp.p, 2.0 ** (j - 1), 2.0**j, spec)
        terms.append((2.0 ** (j * hp.beta) * norm_j) ** hp.q)
    terms_arr = np.asarray(terms)
    total = float(terms_arr.sum())
    if total == 0.0:
        return HerzNormResult(0.0, tuple(terms), hp.j_min, hp.j_max, 0.0, True)

    def geo_tail(last: float, prev: float) -> tuple[float, bool]:
        if last <= 0:
            return 0.0, True
        if prev <= 0:
            return last, True  # isolated term; count it once more, conservatively
        ratio = last / prev
        if ratio >= 0.95:
            return math.inf, False
        return last * ratio / (1.0 - ratio), True

    up_tail, up_ok = geo_tail(terms_arr[-1], terms_arr[-2] if len(terms) > 1 else 0.0)
    lo_tail, lo_ok = geo_tail(terms_arr[0], terms_arr[1] if len(terms) > 1 else 0.0)
    if not up_ok:
        return HerzNormResult(
            math.inf, tuple(terms), hp.j_min, hp.j_max, math.inf, False
        )
    residual = (up_tail + lo_tail) / total
    return HerzNormResult(
        total ** (1.0 / hp.q), tuple(terms), hp.j_min, hp.j_max, residual, lo_ok
    )


# ---------------------------------------------------------------------------
# Cesaro operator
# ---------------------------------------------------------------------------


def _cesaro_batch(
    params: ModelParams,
    w: CesaroWeight,
    F: RadialProfile,
    s_nodes: np.ndarray,
    spec: QuadratureSpec,
) -> np.ndarray:
    """C_phi f at several radii, batched over the substituted domain.

    After v = 1/t the operator reads int_1^inf F(s v) v^(D-2) phi(1/v) dv,
    which shares its domain across all radii in the batch.
    """
    D = params.homogeneity_degree
    s_nodes = np.asarray(s_nodes, dtype=float)
    pos = s_nodes > 0
    out = np.zeros_like(s_nodes)
    if np.any(pos):
        sp = s_nodes[pos]
        s_min = float(sp.min())

        def gauge(v):
            return np.abs(F(v * s_min)) * v ** (D - 2.0 - w.small_t_exponent)

        # normalize by the sampled scale so the tolerances act relatively:
        # shell terms with tiny absolute size get re-amplified by the Herz
        # weights downstream and must not be truncated to zero here
        probe = np.array([1.0, 1.3, 1.8, 2.5, 4.0, 8.0])
        scale = float(np.max(np.abs(gauge(probe))))
        if scale <= 0.0 or not math.isfinite(scale):
            scale = 1.0

        def fmat(v):
            phi_vals = w.phi(1.0 / v)
            base = v ** (D - 2.0) * phi_vals / scale
            return base[:, None] * F(v[:, None] * sp[None, :])

        decay = (
            F.decay.scaled_argument(s_min)
            .times_power(D - 2.0 - w.small_t_exponent)
        )
        breakpoints = tuple(b / s_min for b in F.breakpoints)
        results = integrate_semi_infinite_batch(
            fmat,
            decay,
            int(pos.sum()),
            spec,
            lower=1.0,
            breakpoints=breakpoints,
            tail_gauge=lambda v: gauge(v) / scale,
        )
        out[pos] = [scale * r.value for r in results]
    if np.any(~pos):
        out[~pos] = cesaro_apply(params, w, F, 0.0, spec)
    return out


def cesaro_apply(
    params: ModelParams,
    w: CesaroWeight,
    F: RadialProfile,
    s: float,
    spec: QuadratureSpec | None = None,
) -> float:
    """Generalized Cesaro average of a radial profile at radius s.

    At s = 0 the average reduces to F(0) times the weight mass
    int_0^1 t^(-D) phi(t) dt, which may diverge; divergence raises an
    explicit signal.
    """
    spec = spec or DEFAULT_SPEC
    if s < 0:
        raise ValueError("radius must be nonnegative")
    if s == 0.0:
        f0 = float(F(np.array([0.0]))[0])
        exponent = w.small_t_exponent - params.homogeneity_degree
        if exponent <= -1.0:
            raise DivergentIntegralError(
                "Cesaro average diverges at the origin: weight mass integral has "
                f"endpoint exponent {exponent} <= -1"
            )
        try:
            res = integrate_finite(
                lambda t: t ** (-params.homogeneity_degree) * w.phi(t), 0.0, 1.0, spec
            )
        except QuadratureNonConvergence as exc:
            raise DivergentIntegralError(
                "Cesaro average at the origin did not converge"
            ) from exc
        return f0 * res.value
    return float(_cesaro_batch(params, w, F, np.array([s]), spec)[0])


def cesaro_profile(
    params: ModelParams,
    w: CesaroWeight,
    F: RadialProfile,
    spec: QuadratureSpec | None = None,
) -> RadialProfile:
    """The Cesaro average as a radial profile (same decay class as the input)."""
    spec = spec or DEFAULT_SPEC
    return RadialProfile(
        func=lambda s: _cesaro_batch(params, w, F, np.asarray(s, dtype=float), spec),
        decay=F.decay,
        smoothness="continuous",
        name=f"cesaro({w.name},{F.name})",
    )


def _endpoint_power_integral(
    integrand: Callable[[np.ndarray], np.ndarray],
    endpoint_exponent: float,
    spec: QuadratureSpec,
) -> float:
    """Integral over (0, 1] of an integrand behaving like c t^e at the origin.

    Diverges for e <= -1.  For strongly singular (but integrable) endpoints
    the leading power is integrated in closed form on (0, delta] with the
    coefficient read off at delta, which direct bisection could never resolve.
    """
    e = endpoint_exponent
    if e <= -1.0:
        return math.inf
    if e < -0.5:
        delta = 1e-4
        c0 = float(integrand(np.array([delta]))[0]) / delta**e
        singular = c0 * delta ** (e + 1.0) / (e + 1.0)
        rest = integrate_finite(integrand, delta, 1.0, spec)
        return singular + rest.value
    try:
        res = integrate_finite(integrand, 0.0, 1.0, spec)
    except QuadratureNonConvergence:
        return math.inf
    return res.value


def cesaro_condition_integral(
    params: ModelParams,
    w: CesaroWeight,
    hp: HerzParams,
    spec: QuadratureSpec | None = None,
) -> float:
    """The boundedness condition integral I = int_0^1 t^beta psi(t) dt.

    Returns inf when the endpoint exponent makes the integral diverge (the
    operator is then unbounded on the corresponding space).
    """
    spec = spec or DEFAULT_SPEC
    endpoint_exponent = hp.beta + w.psi_exponent_shift + w.small_t_exponent

    def integrand(t):
        return t**hp.beta * w.psi(t)

    return _endpoint_power_integral(integrand, endpoint_exponent, spec)


def upper_constant(hp: HerzParams) -> float:
    """The explicit upper factor 2^(1-2/q) (1 + 1/q) (1 + 2^beta)."""
    return 2.0 ** (1.0 - 2.0 / hp.q) * (1.0 + 1.0 / hp.q) * (1.0 + 2.0**hp.beta)


# ---------------------------------------------------------------------------
# Extremal family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalFamily:
    """Truncated power family realizing the lower operator-norm bound.

    f_eps(x) = ||x||^(-(beta + eps + D/p)) for ||x|| > 1, zero otherwise.
    Shell norms and the Herz norm have exact closed forms (geometric sums).
    """

    params: ModelParams
    hp: HerzParams
    eps: float

    def __post_init__(self) -> None:
        if not (0.0 < self.eps < 1.0):
            raise ValueError("eps must lie in (0, 1)")

    @property
    def exponent(self) -> float:
        D = self.params.homogeneity_degree
        return self.hp.beta + self.eps + D / self.hp.p

    @property
    def profile(self) -> RadialProfile:
        return power_profile(self.exponent, cutoff=1.0)

    @property
    def c_eps(self) -> float:
        """Exact constant: d_k (2^((beta+eps)p) - 1) / ((beta+eps)p)."""
        be_p = (self.hp.beta + self.eps) * self.hp.p
        return sphere_weight_dk(self.params) * (2.0**be_p - 1.0) / be_p

    def shell_norm(self, j: int) -> float:
        """||f_eps chi_j||_p: the closed form C_eps^(1/p) 2^(-j(beta+eps)) for j >= 1."""
        if j <= 0:
            return 0.0
        return self.c_eps ** (1.0 / self.hp.p) * 2.0 ** (-j * (self.hp.beta + self.eps))

    def herz_norm_closed(self) -> float:
        """Exact geometric sum: C_eps^(1/p) 2^(-eps) / (1 - 2^(-q eps))^(1/q)."""
        q, e = self.hp.q, self.eps
        return (
            self.c_eps ** (1.0 / self.hp.p)
            * 2.0 ** (-e)
            / (1.0 - 2.0 ** (-q * e)) ** (1.0 / q)
        )

    def herz_norm_printed_variant(self) -> float:
        """The variant with 2^(-q eps) in the numerator, reported alongside.

        Disagrees with the exact geometric sum for q != 1; both values are
        displayed so the discrepancy is documented rather than asserted.
        """
        q, e = self.hp.q, self.eps
        return (
            self.c_eps ** (1.0 / self.hp.p)
            * 2.0 ** (-q * e)
            / (1.0 - 2.0 ** (-q * e)) ** (1.0 / q)
        )


@dataclass(frozen=True)
class ExtremalNormComparison:
    closed_form: float
    printed_variant: float
    quadrature_value: float
    rel_difference: float


def extremal_herz_norm(
    params: ModelParams,
    eps: float,
    hp: HerzParams,
    spec: QuadratureSpec | None = None,
) -> ExtremalNormComparison:
    """Closed-form Herz norm of the extremal profile, cross-checked by quadrature."""
    fam = ExtremalFamily(params, hp, eps)
    closed = fam.herz_norm_closed()
    quad = herz_norm(params, fam.profile, hp, spec).value
    return ExtremalNormComparison(
        closed_form=closed,
        printed_variant=fam.herz_norm_printed_variant(),
        quadrature_value=quad,
        rel_difference=abs(quad - closed) / closed,
    )


# ---------------------------------------------------------------------------
# Sandwich verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LowerProbeRow:
    eps: float
    lower_bound: float  # L(eps) = int_0^1 t^(beta+eps) psi dt
    empirical_ratio: float  # herz(C_phi f_eps) / herz(f_eps)
    ok: bool


@dataclass(frozen=True)
class LowerProbeReport:
    rows: tuple[LowerProbeRow, ...]
    sup_ratio: float
    extrapolated_limit: float
    condition_integral: float

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.rows)


def richardson_extrapolate(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Neville polynomial extrapolation of y(x) to x = 0."""
    xs = list(map(float, xs))
    ys = list(map(float, ys))
    n = len(xs)
    tab = list(ys)
    for level in range(1, n):
        for i in range(n - level):
            tab[i] = tab[i + 1] + (tab[i] - tab[i + 1]) * (0.0 - xs[i + level]) / (
                xs[i] - xs[i + level]
            )
    return tab[0]


def operator_norm_lower_probe(
    params: ModelParams,
    w: CesaroWeight,
    hp: HerzParams,
    eps_grid: Sequence[float] = (0.4, 0.2, 0.1, 0.05),
    spec: QuadratureSpec | None = None,
    *,
    tol: float = 1e-3,
) -> LowerProbeReport:
    """Lower bound probe via the truncated power family.

    For each eps, the empirical norm ratio of the Cesaro image to the input
    must dominate L(eps) = int_0^1 t^(beta+eps) psi dt (the image equals
    L(eps) times the input beyond the unit ball, plus extra mass inside), and
    L extrapolates to the condition integral as eps -> 0.
    """
    spec = spec or DEFAULT_SPEC
    rows = []
    for eps in eps_grid:
        fam = ExtremalFamily(params, hp, eps)
        lower = _endpoint_power_integral(
            lambda t: t ** (hp.beta + eps) * w.psi(t),
            hp.beta + eps + w.psi_exponent_shift + w.small_t_exponent,
            spec,
        )
        denom = herz_norm(params, fam.profile, hp, spec).value
        num = herz_norm(params, cesaro_profile(params, w, fam.profile, spec), hp, spec).value
        ratio = num / denom
        rows.append(
            LowerProbeRow(
                eps=eps,
                lower_bound=lower,
                empirical_ratio=ratio,
                ok=bool(ratio >= lower * (1.0 - tol)),
            )
        )
    extrap = richardson_extrapolate([r.eps for r in rows], [r.lower_bound for r in rows])
    return LowerProbeReport(
        rows=tuple(rows),
        sup_ratio=max(r.empirical_ratio for r in rows),
        extrapolated_limit=extrap,
        condition_integral=cesaro_condition_integral(params, w, hp, spec),
    )


@dataclass(frozen=True)
class SandwichRatio:
    name: str
    ratio: float
    within_upper: bool


@dataclass(frozen=True)
class SandwichReport:
    condition_integral: float
    upper_factor: float
    concavity: ConcavityCertificate
    upper_asserted: bool
    ratios: tuple[SandwichRatio, ...]
    lower: LowerProbeReport

    @property
    def bracket(self) -> tuple[float, float]:
        return (self.condition_integral, self.upper_factor * self.condition_integral)

    @property
    def all_within_upper(self) -> bool:
        return all(r.within_upper for r in self.ratios)


def sandwich_verify(
    params: ModelParams,
    w: CesaroWeight,
    hp: HerzParams,
    test_family: Sequence[RadialProfile],
    spec: QuadratureSpec | None = None,
    *,
    tol: float = 1e-3,
    eps_grid: Sequence[float] = (0.4, 0.2, 0.1, 0.05),
) -> SandwichReport:
    """Empirical two-sided verification of the operator-norm bracket.

    (a) every test-family norm ratio stays below c_{q,beta} * I (asserted
    only when the concavity certificate for psi passes; otherwise the upper
    half is report-only); (b) the truncated-power probe dominates its
    analytic lower bound and extrapolates to I.  The operator norm itself is
    never computed; the bracket is the verifiable content.
    """
    spec = spec or DEFAULT_SPEC
    cert = w.concavity_certificate()
    I = cesaro_condition_integral(params, w, hp, spec)
    c = upper_constant(hp)
    ratios = []
    if math.isfinite(I):
        for f in test_family:
            denom = herz_norm(params, f, hp, spec).value
            if denom == 0.0:
                continue
            num = herz_norm(params, cesaro_profile(params, w, f, spec), hp, spec).value
            ratio = num / denom
            ratios.append(
                SandwichRatio(
                    name=f.name,
                    ratio=ratio,
                    within_upper=bool(ratio <= c * I * (1.0 + tol)),
                )
            )
    lower = operator_norm_lower_probe(params, w, hp, eps_grid, spec, tol=tol)
    return SandwichReport(
        condition_integral=I,
        upper_factor=c,
        concavity=cert,
        upper_asserted=cert.passed and math.isfinite(I),
        ratios=tuple(ratios),
        lower=lower,
    )


# ---------------------------------------------------------------------------
# Integral inequality lemmas (randomized property checks)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaStats:
    samples: int
    failures: int
    max_violation: float
    rejected: int = 0

    @property
    def all_passed(self) -> bool:
        return self.failures == 0


def _piecewise_linear(nodes: np.ndarray, values: np.ndarray):
    def f(t):
        return np.interp(np.asarray(t, dtype=float), nodes, values)

    return f


def _integrate_piecewise(f, nodes: np.ndarray, power: float, spec: QuadratureSpec) -> float:
    total = 0.0
    for lo, hi in zip(nodes[:-1], nodes[1:]):
        total += integrate_finite(lambda t: f(t) ** power, lo, hi, spec).value
    return total


def lemma41_check(
    rng: np.random.Generator,
    q: float,
    n_samples: int = 200,
    spec: QuadratureSpec | None = None,
    *,
    n_nodes: int = 17,
) -> LemmaStats:
    """Power-mean inequality (int f)^q <= int f^q on [0,1] for nonnegative f.

    Samples are piecewise-linear with uniformly drawn node values.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    spec = spec or DEFAULT_SPEC
    nodes = np.linspace(0.0, 1.0, n_nodes)
    failures = 0
    max_violation = -math.inf
    for _ in range(n_samples):
        values = rng.uniform(0.0, 2.0, size=n_nodes)
        f = _piecewise_linear(nodes, values)
        lhs = _integrate_piecewise(f, nodes, 1.0, spec) ** q
        rhs = _integrate_piecewise(f, nodes, q, spec)
        violation = lhs - rhs
        max_violation = max(max_violation, violation)
        if violation > 1e-9 * max(1.0, rhs):
            failures += 1
    return LemmaStats(n_samples, failures, max_violation)


def lemma42_check(
    rng: np.random.Generator,
    q: float,
    n_samples: int = 200,
    spec: QuadratureSpec | None = None,
    *,
    n_nodes: int = 17,
    concavity_tol: float = 1e-12,
) -> LemmaStats:
    """Concave-function inequality (int f)^(1/q) <= (1+1/q)/2^(1/q) int f^(1/q).

    Concave samples are built from decreasing slope sequences (shifted to be
    nonnegative) and re-certified by a midpoint check before testing;
    non-concave samples would be rejected, not silently tested.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    spec = spec or DEFAULT_SPEC
    nodes = np.linspace(0.0, 1.0, n_nodes)
    h = nodes[1] - nodes[0]
    const = (1.0 + 1.0 / q) / 2.0 ** (1.0 / q)
    failures = 0
    rejected = 0
    max_violation = -math.inf
    for _ in range(n_samples):
        slopes = np.sort(rng.normal(0.0, 2.0, size=n_nodes - 1))[::-1]
        values = np.concatenate([[0.0], np.cumsum(slopes * h)]) + rng.uniform(0.0, 1.0)
        values -= min(values.min(), 0.0)
        mid_defect = values[1:-1] - 0.5 * (values[:-2] + values[2:])
        if np.min(mid_defect) < -concavity_tol:
            rejected += 1
            continue
        f = _piecewise_linear(nodes, values)
        lhs = _integrate_piecewise(f, nodes, 1.0, spec) ** (1.0 / q)
        rhs = const * _integrate_piecewise(f, nodes, 1.0 / q, spec)
        violation = lhs - rhs
        max_violation = max(max_violation, violation)
        if violation > 1e-9 * max(1.0, rhs):
            failures += 1
    return LemmaStats(n_samples, failures, max_violation, rejected)
