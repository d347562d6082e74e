"""Radial Dunkl harmonic analysis with a desk-scale verification harness.

Library surface: reflection-group weights and constants, the normalized
Bessel kernel, the radial Dunkl transform and its rank-1 translation and
convolution, moduli of continuity, shell-weighted (Herz) norms, and the
generalized Cesaro operator — plus named verification scenarios exercising
the inequalities these objects satisfy.
"""

from .geometry import (
    DerivedConstants,
    ModelParams,
    derived_constants,
    lp_norm_radial,
    mehta_constant,
    sphere_weight_dk,
    transform_normalization,
    weight_wk,
    weighted_radial_integral,
)
from .herz import (
    CesaroWeight,
    ExtremalFamily,
    HerzNormResult,
    HerzParams,
    LemmaStats,
    cesaro_apply,
    cesaro_condition_integral,
    cesaro_profile,
    extremal_herz_norm,
    herz_norm,
    lemma41_check,
    lemma42_check,
    operator_norm_lower_probe,
    richardson_extrapolate,
    sandwich_verify,
    upper_constant,
)
from .profiles import (
    RadialProfile,
    check_decay_tag,
    combine_profiles,
    dilate_profile,
    exponential_profile,
    gaussian_profile,
    indicator_profile,
    power_profile,
    profile_from_config,
    scale_profile,
    smoothed_indicator_profile,
    zero_profile,
)
from .quadrature import (
    Decay,
    DivergentIntegralError,
    IntegralResult,
    QuadratureNonConvergence,
    QuadratureSpec,
    integrate_dyadic_shells,
    integrate_finite,
    integrate_finite_batch,
    integrate_semi_infinite,
    integrate_semi_infinite_batch,
)
from .report import CheckRecord, VerificationReport, emit_report, parse_jsonl
from .scenarios import SCENARIOS, ConfigError, ScenarioConfig, run_scenario
from .special import (
    BesselOrder,
    bessel_normalized,
    bessel_normalized_minus_one,
    gamma_fn,
    kernel_sphere_average,
    rank1_dunkl_kernel,
    rank1_kernel_ode,
)
from .transform import (
    AnalysisParams,
    BesovResult,
    TestBump,
    WeightClassSpec,
    besov_seminorm,
    class_G_check,
    convolve_k,
    dunkl_transform_radial,
    gaussian_bump,
    hausdorff_young_ratio,
    inverse_dunkl_radial,
    modulus_continuity,
    modulus_on_grid,
    modulus_tilde,
    modulus_tilde_on_grid,
    ring_bump,
    transform_on_grid,
    transform_profile,
    translate_radial_rank1,
    translation_lp_norm,
    verify_cor31,
    verify_thm31,
    verify_thm32,
)

__version__ = "0.1.0"
