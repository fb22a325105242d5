"""Discrete averaging operator, discrete Hilbert transform, symmetric
sequence-space quasi-norms, and a constructive optimal-range search with
certified window/tail evaluation throughout."""

from .brackets import (
    Bracket,
    DivergentTailError,
    TailToleranceError,
    ratio_profile_sup,
)
from .families import FAMILY_KINDS, POWER_LOG_GRID, family_rng, generate_family
from .operators import (
    METHOD_CLOSED_FORM,
    METHOD_FAST,
    METHOD_NAIVE,
    BenchRow,
    OperatorOutput,
    Weak11Estimate,
    bench_hilbert,
    calderon,
    calderon_min_kernel,
    dilation_commutation_band,
    estimate_hardy_constant,
    estimate_weak11_constant,
    fast_naive_agreement,
    hilbert,
    hilbert_even_cancellation,
    hilbert_symmetric,
    kernel_values,
    verify_hilbert_lower_bound,
    verify_kernel_monotonicity,
    verify_linearity,
    verify_pointwise_domination,
    verify_sd_rearrangement_fixed,
)
from .optimal_range import (
    DEFAULT_GRID,
    DominationCertificate,
    FNormEstimate,
    GridConfig,
    HilbertRangeSandwich,
    MembershipResult,
    MinimalityProbe,
    NoWitnessFoundError,
    check_domination,
    f_norm_upper,
    harmonic_calderon_closed_form,
    verify_f_quasitriangle,
    verify_hilbert_optimal_range,
    verify_minimality,
    weak_l1_membership,
)
from .report import (
    CaseResult,
    RunConfig,
    VerificationReport,
    emit_report_csv,
    emit_report_json,
    emit_values_csv,
)
from .sequences import (
    DomainMismatchError,
    FiniteSequence,
    HeadResolutionError,
    IndexDomain,
    PowerLogSequence,
    Rearrangement,
    add_scaled,
    decreasing_rearrangement,
    dilate,
    dilation,
    finite,
    harmonic_number,
    harmonic_numbers,
    materialize,
    power_log,
    sequence_from_json,
    sequence_to_json,
    tail_sum_over_k,
    weighted_tail_sum,
)
from .spaces import (
    LLOG,
    LOG1P,
    M1INF,
    SUM_SPACE,
    WEAK_L1,
    AxiomCheckResult,
    NormValue,
    PhiTemplate,
    SpaceSpec,
    axiom_check,
    llog_norm,
    lorentz_phi_norm,
    lp_norm,
    lp_space,
    marcinkiewicz_norm,
    space_norm,
    space_spec_from_json,
    space_spec_to_json,
    sum_space_quasinorm,
    weak_l1_quasinorm,
)
from .suites import OPTRANGE_SUBSUITES, SUITE_NAMES, run_optrange_subsuite, run_suite

__version__ = "0.1.0"

__all__ = [
    "Bracket",
    "DivergentTailError",
    "TailToleranceError",
    "ratio_profile_sup",
    "FAMILY_KINDS",
    "POWER_LOG_GRID",
    "family_rng",
    "generate_family",
    "METHOD_CLOSED_FORM",
    "METHOD_FAST",
    "METHOD_NAIVE",
    "BenchRow",
    "OperatorOutput",
    "Weak11Estimate",
    "bench_hilbert",
    "calderon",
    "calderon_min_kernel",
    "dilation_commutation_band",
    "estimate_hardy_constant",
    "estimate_weak11_constant",
    "fast_naive_agreement",
    "hilbert",
    "hilbert_even_cancellation",
    "hilbert_symmetric",
    "kernel_values",
    "verify_hilbert_lower_bound",
    "verify_kernel_monotonicity",
    "verify_linearity",
    "verify_pointwise_domination",
    "verify_sd_rearrangement_fixed",
    "DEFAULT_GRID",
    "DominationCertificate",
    "FNormEstimate",
    "GridConfig",
    "HilbertRangeSandwich",
    "MembershipResult",
    "MinimalityProbe",
    "NoWitnessFoundError",
    "check_domination",
    "f_norm_upper",
    "harmonic_calderon_closed_form",
    "verify_f_quasitriangle",
    "verify_hilbert_optimal_range",
    "verify_minimality",
    "weak_l1_membership",
    "CaseResult",
    "RunConfig",
    "VerificationReport",
    "emit_report_csv",
    "emit_report_json",
    "emit_values_csv",
    "DomainMismatchError",
    "FiniteSequence",
    "HeadResolutionError",
    "IndexDomain",
    "PowerLogSequence",
    "Rearrangement",
    "add_scaled",
    "decreasing_rearrangement",
    "dilate",
    "dilation",
    "finite",
    "harmonic_number",
    "harmonic_numbers",
    "materialize",
    "power_log",
    "sequence_from_json",
    "sequence_to_json",
    "tail_sum_over_k",
    "weighted_tail_sum",
    "LLOG",
    "LOG1P",
    "M1INF",
    "SUM_SPACE",
    "WEAK_L1",
    "AxiomCheckResult",
    "NormValue",
    "PhiTemplate",
    "SpaceSpec",
    "axiom_check",
    "llog_norm",
    "lorentz_phi_norm",
    "lp_norm",
    "lp_space",
    "marcinkiewicz_norm",
    "space_norm",
    "space_spec_from_json",
    "space_spec_to_json",
    "sum_space_quasinorm",
    "weak_l1_quasinorm",
    "OPTRANGE_SUBSUITES",
    "SUITE_NAMES",
    "run_optrange_subsuite",
    "run_suite",
    "__version__",
]
