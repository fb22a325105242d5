"""Named verification suites behind the `verify` command.

Each suite is a fixed-order list of property checks over deterministic
families: (seed, config) fixes every drawn sequence and therefore every byte
of the report.  Wall-clock measurements are deliberately excluded from all
reports (timing lives only in the bench command), so repeated runs are
byte-identical.
"""

from __future__ import annotations

import math
from typing import List, Optional

import numpy as np

from .families import (
    FAMILY_RANDOM_NONNEG_DECREASING,
    FAMILY_RANDOM_SIGNED,
    FAMILY_SPIKES,
    family_rng,
    generate_family,
)
from .operators import (
    calderon,
    calderon_min_kernel,
    dilation_commutation_band,
    estimate_hardy_constant,
    estimate_weak11_constant,
    fast_naive_agreement,
    hilbert_even_cancellation,
    hilbert_symmetric,
    verify_hilbert_lower_bound,
    verify_kernel_monotonicity,
    verify_linearity,
    verify_pointwise_domination,
    verify_sd_rearrangement_fixed,
)
from .optimal_range import (
    GridConfig,
    NoWitnessFoundError,
    check_domination,
    f_norm_upper,
    harmonic_calderon_closed_form,
    verify_f_quasitriangle,
    verify_hilbert_optimal_range,
    verify_minimality,
    weak_l1_membership,
)
from .report import FAIL, PASS, CaseResult, RunConfig, VerificationReport
from .sequences import (
    FiniteSequence,
    IndexDomain,
    add_scaled,
    decreasing_rearrangement,
    dilate,
    finite,
    harmonic_numbers,
    power_log,
    weighted_tail_sum,
)
from .spaces import (
    LLOG,
    LOG1P,
    M1INF,
    SUM_SPACE,
    WEAK_L1,
    PhiTemplate,
    SpaceSpec,
    axiom_check,
    llog_norm,
    lorentz_phi_norm,
    lp_norm,
    lp_space,
    marcinkiewicz_norm,
    sum_space_quasinorm,
    weak_l1_quasinorm,
)

SUITE_NAMES = ("core", "norms", "operators", "optrange", "all")
OPTRANGE_SUBSUITES = ("quasitriangle", "minimality", "hilbert")

LOG2 = math.log(2.0)


def _case(name: str, ok: bool, observed: Optional[float], note: str, witness=None) -> CaseResult:
    return CaseResult(
        name=name,
        status=PASS if ok else FAIL,
        observed_constant=observed,
        witness=witness,
        note=note,
    )


def _fail_witness(seed: int, index, **extra) -> dict:
    w = {"seed": seed, "case_index": index}
    w.update(extra)
    return w


# ---------------------------------------------------------------------------
# core suite


def _core_cases(config: RunConfig) -> List[CaseResult]:
    cases: List[CaseResult] = []
    seed = config.seed

    signed = generate_family(FAMILY_RANDOM_SIGNED, 200, seed)

    bad = next(
        (
            i
            for i, x in enumerate(signed)
            if not decreasing_rearrangement(x).equals(
                decreasing_rearrangement(decreasing_rearrangement(x))
            )
        ),
        None,
    )
    cases.append(
        _case(
            "mu_idempotent_bitwise",
            bad is None,
            None,
            f"mu(mu(x)) == mu(x) bitwise over {len(signed)} signed sequences",
            None if bad is None else _fail_witness(seed, bad),
        )
    )

    rng = family_rng("core/permutation", seed)
    bad = None
    for i, x in enumerate(signed):
        perm = rng.permutation(len(x.values))
        if not decreasing_rearrangement(x).equals(
            decreasing_rearrangement(finite(x.values[perm]))
        ):
            bad = i
            break
    cases.append(
        _case(
            "mu_permutation_invariant",
            bad is None,
            None,
            f"mu invariant under index permutation over {len(signed)} sequences",
            None if bad is None else _fail_witness(seed, bad),
        )
    )

    rng = family_rng("core/homogeneity", seed)
    bad = None
    for i, x in enumerate(signed):
        c = float(rng.standard_normal()) * 3.0
        lhs = decreasing_rearrangement(finite(x.values * c)).values
        rhs = abs(c) * decreasing_rearrangement(x).values
        if not np.array_equal(lhs, rhs):
            bad = i
            break
    cases.append(
        _case(
            "mu_absolute_homogeneity_bitwise",
            bad is None,
            None,
            f"mu(c x) == |c| mu(x) bitwise over {len(signed)} sequences",
            None if bad is None else _fail_witness(seed, bad),
        )
    )

    bad = None
    for i, x in enumerate(signed[:50]):
        mu = decreasing_rearrangement(x)
        for m in (2, 3, 4):
            for k in (2, 3, 4):
                if not dilate(dilate(mu, m), k).equals(dilate(mu, m * k)):
                    bad = (i, m, k)
                    break
    cases.append(
        _case(
            "dilation_composition_bitwise",
            bad is None,
            None,
            "sigma_m(sigma_k(mu x)) == sigma_{mk}(mu x) for m,k in {2,3,4} over 50 sequences",
            None if bad is None else _fail_witness(seed, bad[0], m=bad[1], k=bad[2]),
        )
    )

    rng = family_rng("core/two_term", seed)
    violations = 0
    worst_idx = None
    n_pairs = 1000
    for i in range(n_pairs):
        n1 = int(rng.integers(1, 48))
        n2 = int(rng.integers(1, 48))
        x1 = finite(rng.standard_normal(n1))
        x2 = finite(rng.standard_normal(n2))
        s = add_scaled(x1, 1.0, x2, 1.0)
        n = max(n1, n2) + 2
        lhs = decreasing_rearrangement(s).head(n)
        d1 = dilate(decreasing_rearrangement(x1), 2).head(n)
        d2 = dilate(decreasing_rearrangement(x2), 2).head(n)
        if np.any(lhs > d1 + d2 + 1e-15):
            violations += 1
            worst_idx = worst_idx if worst_idx is not None else i
    cases.append(
        _case(
            "mu_two_term_subadditivity",
            violations == 0,
            float(violations),
            f"mu(n, x1+x2) <= (sigma_2 mu x1)(n) + (sigma_2 mu x2)(n), {n_pairs} pairs",
            None if violations == 0 else _fail_witness(seed, worst_idx),
        )
    )

    rng = family_rng("core/multi_term", seed)
    violations = 0
    worst_idx = None
    n_tuples = 200
    for i in range(n_tuples):
        K = int(rng.integers(2, 7))
        xs = [finite(rng.standard_normal(int(rng.integers(1, 32)))) for _ in range(K)]
        total = xs[0]
        for xk in xs[1:]:
            total = add_scaled(total, 1.0, xk, 1.0)
        n = max(x.end for x in xs) + 2
        lhs = decreasing_rearrangement(total).head(n)
        rhs = np.zeros(n)
        for k, xk in enumerate(xs, start=1):
            rhs += dilate(decreasing_rearrangement(xk), 2**k).head(n)
        if np.any(lhs > rhs + 1e-15):
            violations += 1
            worst_idx = worst_idx if worst_idx is not None else i
    cases.append(
        _case(
            "mu_multi_term_dilated_bound",
            violations == 0,
            float(violations),
            f"mu(n, sum x_k) <= sum (sigma_2^k mu x_k)(n), K <= 6, {n_tuples} tuples",
            None if violations == 0 else _fail_witness(seed, worst_idx),
        )
    )

    # certified tail brackets contain brute-force partial sums plus remainder
    worst_hw = 0.0
    ok_tail = True
    for alpha, beta in ((1.0, 0.0), (1.5, 0.0), (2.0, 1.0), (1.25, 2.0)):
        x = power_log(alpha, beta)
        start = 64
        b = weighted_tail_sum(x, start - 1)
        ks = np.arange(start, 1 << 21, dtype=np.float64)
        brute = float(np.sum(x.values_at(ks) / ks))
        rem = weighted_tail_sum(x, (1 << 21) - 1)
        overlap = max(b.lo, brute + rem.lo) <= min(b.hi, brute + rem.hi) + 1e-12
        ok_tail = ok_tail and overlap
        worst_hw = max(worst_hw, b.halfwidth)
    cases.append(
        _case(
            "weighted_tail_bracket_contains_brute_sum",
            ok_tail,
            worst_hw,
            "sum_{k>n} x(k)/k brackets overlap 2^21-term partial sums plus certified remainder",
        )
    )

    rng = family_rng("core/add_scaled", seed)
    bad = None
    for i in range(100):
        x1 = finite(rng.standard_normal(int(rng.integers(1, 32))))
        x2 = finite(rng.standard_normal(int(rng.integers(1, 32))), offset=int(rng.integers(0, 8)))
        a1 = float(rng.standard_normal())
        a2 = float(rng.standard_normal())
        s = add_scaled(x1, a1, x2, a2)
        hi = max(x1.end, x2.end) + 1
        want = np.array([a1 * x1.value_at(k) + a2 * x2.value_at(k) for k in range(hi)])
        got = np.array([s.value_at(k) for k in range(hi)])
        if not np.allclose(got, want, rtol=0.0, atol=1e-15):
            bad = i
            break
    cases.append(
        _case(
            "add_scaled_pointwise",
            bad is None,
            None,
            "merged linear combination matches dense arithmetic over 100 draws",
            None if bad is None else _fail_witness(seed, bad),
        )
    )
    return cases


# ---------------------------------------------------------------------------
# norms suite


_AXIOM_SPACES: tuple = (
    lp_space(1.5),
    lp_space(2.0),
    lp_space(3.0),
    WEAK_L1,
    LLOG,
    SpaceSpec(kind="lorentz_phi", phi=LOG1P),
    SpaceSpec(kind="lorentz_phi", phi=PhiTemplate("power", 0.5)),
    M1INF,
    SUM_SPACE,
)


def _norms_cases(config: RunConfig) -> List[CaseResult]:
    cases: List[CaseResult] = []
    seed = config.seed

    for spec in _AXIOM_SPACES:
        res = axiom_check(spec, trials=config.trials, seed=seed)
        cases.append(
            _case(
                f"axioms_{spec.label}",
                res.ok,
                res.quasi_triangle_modulus,
                (
                    f"monotone={res.monotonicity_violations} rearr={res.rearrangement_violations} "
                    f"homog_dev={res.homogeneity_max_rel_dev:.3e} over {res.trials} trials"
                ),
                None if res.ok else {"seed": seed, "worst_pair": res.worst_triangle_pair},
            )
        )

    fam = generate_family(FAMILY_RANDOM_SIGNED, 200, seed) + generate_family(
        FAMILY_SPIKES, 50, seed
    )
    sup_ratio = 0.0
    for x in fam:
        w = weak_l1_quasinorm(x).value
        if w == 0.0:
            continue
        sup_ratio = max(sup_ratio, marcinkiewicz_norm(x).value / w)
    cases.append(
        _case(
            "marcinkiewicz_within_inv_log2_of_weak",
            sup_ratio <= 1.0 / LOG2 + 1e-9,
            sup_ratio,
            f"sup m(x)/weak(x) over {len(fam)} finite sequences vs 1/log2 = {1 / LOG2:.12f}",
        )
    )

    wv = weak_l1_quasinorm(power_log(1.0, 1.0)).value
    cases.append(
        _case(
            "log_profile_weak_l1_infinite",
            math.isinf(wv),
            None,
            "sup (n+1) mu(n) diverges for mu(n) = log(n+2)/(n+1)",
        )
    )
    mv = marcinkiewicz_norm(power_log(1.0, 1.0), window=max(16, config.window)).value
    cases.append(
        _case(
            "log_profile_marcinkiewicz_infinite",
            math.isinf(mv),
            None,
            "partial sums of log(k+2)/(k+1) grow like log^2/2, outrunning log(2+n)",
        )
    )

    rng = family_rng("norms/lorentz_l1", seed)
    worst = 0.0
    for _ in range(50):
        x = finite(rng.standard_normal(int(rng.integers(1, 40))))
        a = lorentz_phi_norm(x, PhiTemplate("power", 1.0)).value
        b = lp_norm(x, 1.0).value
        if b > 0:
            worst = max(worst, abs(a - b) / b)
    cases.append(
        _case(
            "lorentz_linear_phi_equals_l1",
            worst <= 1e-12,
            worst,
            "phi(t)=t Lorentz norm matches the l1 norm on finite supports",
        )
    )

    rng = family_rng("norms/llog_constants", seed)
    lo_ratio, hi_ratio = math.inf, 0.0
    for _ in range(100):
        x = finite(np.abs(rng.standard_normal(int(rng.integers(1, 40)))))
        a = lorentz_phi_norm(x, LOG1P).value
        b = llog_norm(x).value
        if b > 0:
            r = a / b
            lo_ratio, hi_ratio = min(lo_ratio, r), max(hi_ratio, r)
    cases.append(
        _case(
            "llog_vs_log1p_increment_constants",
            LOG2 - 1e-12 <= lo_ratio and hi_ratio <= 1.0 + 1e-12,
            hi_ratio,
            f"ratio of log(1+t)-increment norm to sum mu/(n+1) in [{lo_ratio:.6f}, {hi_ratio:.6f}], "
            f"certified interval [log2, 1]",
        )
    )

    rng = family_rng("norms/sum_space", seed)
    worst = 0.0
    for _ in range(100):
        x = finite(rng.standard_normal(int(rng.integers(1, 40))))
        s = sum_space_quasinorm(x).value
        worst = max(worst, abs(s - float(np.max(np.abs(x.values)))))
    cases.append(
        _case(
            "sum_space_degenerates_to_sup",
            worst <= 1e-12,
            worst,
            "optimal split puts the whole sequence in the bounded part at height mu(0)",
        )
    )
    return cases


# ---------------------------------------------------------------------------
# operators suite


def _operators_cases(config: RunConfig) -> List[CaseResult]:
    cases: List[CaseResult] = []
    seed = config.seed
    window = max(16, config.window)

    rng = family_rng("operators/linearity", seed)
    worst = 0.0
    for _ in range(50):
        x1 = finite(rng.standard_normal(int(rng.integers(1, 48))))
        x2 = finite(rng.standard_normal(int(rng.integers(1, 48))))
        res = verify_linearity(
            x1,
            x2,
            float(rng.standard_normal()),
            float(rng.standard_normal()),
            window=min(window, 256),
            tol=config.tolerance_exact,
        )
        worst = max(worst, res.observed_constant or 0.0)
    cases.append(
        _case(
            "calderon_linearity",
            worst <= config.tolerance_exact,
            worst,
            "max |S(a x1 + b x2) - a S x1 - b S x2| over 50 pairs",
        )
    )

    mono = generate_family(FAMILY_RANDOM_NONNEG_DECREASING, 50, seed)
    bad = None
    for i, x in enumerate(mono):
        v = calderon(x, min(window, 256)).window_values
        if np.any(v < -1e-15) or np.any(np.diff(v) > 1e-15):
            bad = i
            break
    cases.append(
        _case(
            "calderon_positive_and_monotone",
            bad is None,
            None,
            "S x >= 0 and nonincreasing for nonnegative nonincreasing x, 50 draws",
            None if bad is None else _fail_witness(seed, bad),
        )
    )

    rng = family_rng("operators/min_kernel", seed)
    worst = 0.0
    for _ in range(50):
        x = finite(rng.standard_normal(int(rng.integers(1, 64))))
        a = calderon(x, min(window, 256)).window_values
        b = calderon_min_kernel(x, min(window, 256)).window_values
        worst = max(worst, float(np.max(np.abs(a - b))))
    cases.append(
        _case(
            "calderon_min_kernel_agreement",
            worst <= config.tolerance_exact,
            worst,
            "averaging-plus-tail route vs min-kernel route, 50 sequences",
        )
    )

    cases.append(verify_kernel_monotonicity(rows=(0, 1, 2, 7, 64), k_max=512))

    signed = generate_family(FAMILY_RANDOM_SIGNED, config.trials, seed)
    violations = 0
    worst_idx = None
    for i, x in enumerate(signed):
        r = verify_pointwise_domination(x, min(window, 256), tol=config.tolerance_exact)
        if r.status != PASS:
            violations += 1
            worst_idx = worst_idx if worst_idx is not None else i
    cases.append(
        _case(
            "pointwise_domination_by_rearranged_image",
            violations == 0,
            float(violations),
            f"|S x| <= S mu(x) pointwise over {len(signed)} signed sequences",
            None if violations == 0 else _fail_witness(seed, worst_idx),
        )
    )

    fixed_bad = None
    probes = mono[:50] + [finite(1.0 / (np.arange(64) + 1.0))]
    for i, x in enumerate(probes):
        if verify_sd_rearrangement_fixed(x, min(window, 256)).status != PASS:
            fixed_bad = i
            break
    cases.append(
        _case(
            "image_of_monotone_is_own_rearrangement",
            fixed_bad is None,
            None,
            "S mu(x) is nonincreasing and equal to its sorted self, bitwise",
            None if fixed_bad is None else _fail_witness(seed, fixed_bad),
        )
    )

    violations = 0
    worst_idx = None
    lower_window = min(window, 512)
    for i, x in enumerate(mono[: min(config.trials, 50)]):
        r = verify_hilbert_lower_bound(x, lower_window, tol=config.tolerance_exact)
        if r.status != PASS:
            violations += 1
            worst_idx = worst_idx if worst_idx is not None else i
    cases.append(
        _case(
            "hilbert_reflected_lower_bound",
            violations == 0,
            float(violations),
            f"S x(n)/(2 pi) <= |H x(-n)| on [1, {lower_window}] for nonneg nonincreasing x",
            None if violations == 0 else _fail_witness(seed, worst_idx),
        )
    )

    impulse = FiniteSequence(IndexDomain.LINE, 0, np.array([1.0]))
    h = hilbert_symmetric(impulse, min(window, 4096))
    wnorm = weak_l1_quasinorm(finite(h.window_values)).value
    cases.append(
        _case(
            "unit_impulse_weak_l1_constant",
            abs(wnorm - 2.0 / math.pi) <= config.tolerance_exact,
            wnorm,
            "weak-l1 norm of the transformed unit impulse equals 2/pi",
        )
    )

    rng = family_rng("operators/weak11", seed)
    fam = []
    for _ in range(100):
        v = rng.standard_normal(int(rng.integers(1, 64)))
        v /= np.sum(np.abs(v))
        fam.append(FiniteSequence(IndexDomain.LINE, 0, v))
    est = estimate_weak11_constant(fam, window=1 << 12)
    cases.append(
        _case(
            "weak11_family_constant_stable",
            math.isfinite(est.constant) and est.relative_change <= 0.05,
            est.constant,
            (
                f"empirical sup |Hx|_w over 100 l1-normalized inputs; window doubling moves it "
                f"{est.relative_change * 100:.3f}%"
            ),
        )
    )

    hardy_fam = generate_family(FAMILY_RANDOM_SIGNED, config.trials, seed)
    for p in (1.5, 2.0, 3.0):
        cases.append(estimate_hardy_constant(p, hardy_fam))

    rng = family_rng("operators/fast_naive", seed)
    v = rng.standard_normal(1 << 12)
    dev = fast_naive_agreement(
        FiniteSequence(IndexDomain.LINE, -(1 << 11), v), 1 << 12
    )
    cases.append(
        _case(
            "hilbert_fast_matches_naive",
            dev <= config.tolerance_fast,
            dev,
            "max relative deviation between direct-sum and convolution routes, support 4096",
        )
    )

    rng = family_rng("operators/even", seed)
    bad = None
    for i in range(20):
        half = rng.standard_normal(int(rng.integers(1, 32)))
        even = FiniteSequence(
            IndexDomain.LINE, -len(half), np.concatenate([half[::-1], [0.0], half])
        )
        if hilbert_even_cancellation(even, tol=config.tolerance_exact).status != PASS:
            bad = i
            break
    cases.append(
        _case(
            "hilbert_even_input_cancels_at_zero",
            bad is None,
            None,
            "(H x)(0) = 0 for sequences even about 0, 20 draws",
            None if bad is None else _fail_witness(seed, bad),
        )
    )

    dil_fam = generate_family(FAMILY_RANDOM_NONNEG_DECREASING, 50, seed)
    lo, hi = dilation_commutation_band(dil_fam, ms=(2, 4, 8), window=min(window, 4096))
    cases.append(
        _case(
            "dilation_commutation_band",
            0.2 <= lo <= hi <= 5.0,
            hi,
            f"ratio band [{lo:.6f}, {hi:.6f}] of S sigma_m mu(y) to sigma_m S mu(y), m in {{2,4,8}}",
        )
    )
    return cases


# ---------------------------------------------------------------------------
# optrange suite


def _grid_for(config: RunConfig) -> GridConfig:
    return GridConfig(window=min(max(config.window, 16), 1 << 14))


def _finite_support_cap(grid: GridConfig) -> int:
    # finite inputs stay inside half the certificate window so the
    # finite-support tail argument always applies
    return max(2, min(32, grid.window // 2))


def _optrange_quasitriangle_cases(config: RunConfig) -> List[CaseResult]:
    seed = config.seed
    grid = _grid_for(config)
    cap = _finite_support_cap(grid)
    rng = family_rng("optrange/quasitriangle", seed)
    pairs = []
    for _ in range(config.trials):
        a = finite(rng.standard_normal(int(rng.integers(1, cap))))
        b = finite(rng.standard_normal(int(rng.integers(1, cap))))
        pairs.append((a, b))
    c_E = axiom_check(WEAK_L1, trials=config.trials, seed=seed).quasi_triangle_modulus
    return [verify_f_quasitriangle(WEAK_L1, pairs, c_E=c_E, search=grid)]


def _optrange_minimality_cases(config: RunConfig) -> List[CaseResult]:
    seed = config.seed
    grid = _grid_for(config)
    witnesses = [
        power_log(1.0, 0.0),
        power_log(1.5, 0.0),
        power_log(2.0, 0.0),
        finite([1.0, 0.5, 0.25, 0.125]),
    ] + generate_family(FAMILY_RANDOM_NONNEG_DECREASING, 4, seed, max_support=16)
    catalog = [WEAK_L1, M1INF, LLOG, lp_space(2.0)]
    probes = verify_minimality(
        WEAK_L1,
        catalog,
        witnesses,
        window=1 << 16,
        member_window=min(grid.window, 1 << 12),
        search=grid,
    )
    by = {p.space: p for p in probes}
    cases = [
        _case(
            "minimality_weak_l1_image_escapes",
            by["weak_l1"].detected_unbounded,
            by["weak_l1"].probe_constant,
            (
                f"windowed |S mu(a)|_w / |a|_w reaches {by['weak_l1'].probe_constant:.4f} at 2^16 "
                f"(half-window {by['weak_l1'].probe_constant_half:.4f}): growth, not saturation"
            ),
        )
    ]
    for label in ("m1inf", "llog", "lp(2)"):
        p = by[label]
        ok = (not p.detected_unbounded) and p.containment_violations == 0
        cases.append(
            _case(
                f"minimality_containment_{label}",
                ok,
                p.containment_constant,
                (
                    f"probe {p.probe_constant:.4f} (half {p.probe_constant_half:.4f}); "
                    f"|x|_G <= C |x|_F held with C={p.containment_constant:.4f} on generated members"
                ),
            )
        )
    return cases


def _optrange_hilbert_cases(config: RunConfig) -> List[CaseResult]:
    seed = config.seed
    rng = family_rng("optrange/sandwich", seed)
    l1fam, monofam = [], []
    for _ in range(min(config.trials, 50)):
        v = rng.standard_normal(int(rng.integers(4, 48)))
        v /= np.sum(np.abs(v))
        l1fam.append(finite(v))
        monofam.append(finite(np.sort(rng.random(int(rng.integers(4, 48))))[::-1]))
    sw = verify_hilbert_optimal_range(l1fam, monofam, out_window=1 << 12, check_len=512)
    drift = abs(sw.upper_constant_doubled - sw.upper_constant) / max(sw.upper_constant, 1e-300)
    ok = (
        0.0 < sw.upper_constant < math.inf
        and drift <= 0.05
        and sw.lower_min_slack_ratio >= 1.0 - 1e-12
    )
    return [
        _case(
            "hilbert_sandwich_two_sided",
            ok,
            sw.upper_constant,
            (
                f"mu(Hx) <= C1 S mu(x) with C1={sw.upper_constant:.6f} "
                f"(doubled window {sw.upper_constant_doubled:.6f}, drift {drift * 100:.3f}%); "
                f"reflected lower bound min ratio {sw.lower_min_slack_ratio:.6f} >= 1"
            ),
        )
    ]


def _optrange_cases(config: RunConfig) -> List[CaseResult]:
    cases: List[CaseResult] = []
    seed = config.seed
    grid = _grid_for(config)
    cap = _finite_support_cap(grid)

    err0 = abs(harmonic_calderon_closed_form(0) - 2.0)
    err1 = abs(harmonic_calderon_closed_form(1) - 1.25)
    cases.append(
        _case(
            "harmonic_image_anchor_values",
            max(err0, err1) <= config.tolerance_exact,
            max(err0, err1),
            "closed form gives 2 at n=0 and 5/4 at n=1",
        )
    )

    W = min(max(config.window, 16), 100_000)
    out = calderon(power_log(1.0, 0.0), W)
    closed = np.array([harmonic_calderon_closed_form(n) for n in range(W)])
    dev = float(np.max(np.abs(out.window_values - closed) / closed))
    cases.append(
        _case(
            "harmonic_image_prefix_agreement",
            dev <= 1e-10,
            dev,
            f"prefix-sum evaluation matches closed form to window {W}",
        )
    )

    ns = np.arange(10, 10_001)
    ratio = (harmonic_numbers(10_001)[10:] + 1.0) / np.log(ns + 1.0)
    envelope_ok = bool(
        np.all(ratio >= 1.0)
        and np.all(ratio <= 1.0 + 1.8 / np.log(ns + 1.0))
        and np.all(np.diff(ratio) <= 1e-15)
    )
    big_ok = all(
        1.0
        <= harmonic_calderon_closed_form(n) * (n + 1) / math.log(n + 1.0)
        <= 1.0 + 1.8 / math.log(n + 1.0)
        for n in (10**2, 10**3, 10**4, 10**6)
    )
    cases.append(
        _case(
            "harmonic_image_log_envelope",
            envelope_ok and big_ok,
            float(ratio[0]),
            "(H_{n+1}+1)/log(n+1) nonincreasing toward 1 on [10, 10^4] and inside "
            "1 + 1.8/log(n+1) up to 10^6",
        )
    )

    m = weak_l1_membership(power_log(1.0, 0.0), window=grid.window)
    cases.append(
        _case(
            "c_a_of_harmonic_profile",
            m.member and abs(m.c_a - 1.0 / LOG2) <= config.tolerance_exact,
            m.c_a,
            "sup mu(n)(n+1)/log(n+2) for the harmonic profile equals 1/log 2",
        )
    )

    rng = family_rng("optrange/ca_scaling", seed)
    worst = 0.0
    for _ in range(50):
        x = finite(np.abs(rng.standard_normal(int(rng.integers(1, 32)))))
        c = float(rng.uniform(0.1, 10.0))
        a = weak_l1_membership(finite(x.values * c), window=grid.window).c_a
        b = c * weak_l1_membership(x, window=grid.window).c_a
        if b > 0:
            worst = max(worst, abs(a - b) / b)
    cases.append(
        _case(
            "c_a_positive_homogeneity",
            worst <= 1e-12,
            worst,
            "c_a(c x) = c c_a(x) up to float reassociation, 50 draws",
        )
    )

    rng = family_rng("optrange/mu_invariance", seed)
    bad = None
    for i in range(50):
        x = finite(rng.standard_normal(int(rng.integers(1, cap))))
        fa = f_norm_upper(x, WEAK_L1, grid)
        fb = f_norm_upper(decreasing_rearrangement(x), WEAK_L1, grid)
        if fa.upper != fb.upper:
            bad = i
            break
    cases.append(
        _case(
            "f_norm_rearrangement_invariant_bitwise",
            bad is None,
            None,
            "witness search sees only mu(x): estimates agree bitwise, 50 draws",
            None if bad is None else _fail_witness(seed, bad),
        )
    )

    mixed = _mixed_membership_family(seed, config.trials, cap)
    disagreements = 0
    worst_idx = None
    for i, x in enumerate(mixed):
        memb = weak_l1_membership(x, window=grid.window).member
        try:
            f_norm_upper(x, WEAK_L1, grid)
            found = True
        except NoWitnessFoundError:
            found = False
        if memb != found:
            disagreements += 1
            worst_idx = worst_idx if worst_idx is not None else i
    cases.append(
        _case(
            "membership_biconditional_with_witness_search",
            disagreements == 0,
            float(disagreements),
            f"finiteness of c_a agrees with witness-search success on {len(mixed)} mixed inputs",
            None if disagreements == 0 else _fail_witness(seed, worst_idx),
        )
    )

    rng = family_rng("optrange/reverify", seed)
    bad = None
    for i in range(20):
        x = finite(np.abs(rng.standard_normal(int(rng.integers(1, cap)))))
        est = f_norm_upper(x, WEAK_L1, grid)
        cert = check_domination(est.witness.x, est.witness.y, grid.window)
        if not (est.witness.verified and cert.verified):
            bad = i
            break
    cases.append(
        _case(
            "certificate_reverifies_from_scratch",
            bad is None,
            None,
            "every emitted witness passes an independent re-check, 20 draws",
            None if bad is None else _fail_witness(seed, bad),
        )
    )

    cases.extend(_optrange_quasitriangle_cases(config))
    cases.extend(_optrange_minimality_cases(config))
    cases.extend(_optrange_hilbert_cases(config))
    return cases


def _mixed_membership_family(seed: int, count: int, cap: int = 32) -> list:
    rng = family_rng("optrange/mixed_membership", seed)
    fam = []
    for i in range(count):
        kind = i % 5
        if kind == 0:
            fam.append(finite(rng.standard_normal(int(rng.integers(1, cap)))))
        elif kind == 1:
            fam.append(
                power_log(
                    float(rng.uniform(0.3, 2.5)),
                    float(rng.integers(0, 3)),
                    float(rng.uniform(0.5, 2.0)),
                )
            )
        elif kind == 2:
            fam.append(power_log(1.0, float(rng.integers(0, 4))))
        elif kind == 3:
            v = np.zeros(max(4, int(rng.integers(4, max(5, cap)))))
            v[rng.integers(0, len(v))] = rng.random() + 0.5
            fam.append(finite(v))
        else:
            fam.append(power_log(float(rng.uniform(1.01, 3.0)), 0.0))
    return fam


# ---------------------------------------------------------------------------
# dispatch


_SUITE_BUILDERS: dict = {
    "core": _core_cases,
    "norms": _norms_cases,
    "operators": _operators_cases,
    "optrange": _optrange_cases,
}


def run_suite(name: str, config: Optional[RunConfig] = None) -> VerificationReport:
    """Run one named suite (or all of them, in fixed order) and return the
    consolidated report.  Reports contain no wall-clock data: identical
    (name, config) pairs produce byte-identical reports."""
    config = config or RunConfig()
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose one of {SUITE_NAMES}")
    report = VerificationReport(suite=name, cases=[], environment=config.environment_echo())
    if name == "all":
        for sub in ("core", "norms", "operators", "optrange"):
            report.extend(_SUITE_BUILDERS[sub](config))
    else:
        report.extend(_SUITE_BUILDERS[name](config))
    return report


def run_optrange_subsuite(name: str, config: Optional[RunConfig] = None) -> VerificationReport:
    """The focused sub-suites exposed by the optrange CLI verb."""
    config = config or RunConfig()
    if name not in OPTRANGE_SUBSUITES:
        raise ValueError(
            f"unknown optrange sub-suite {name!r}; choose one of {OPTRANGE_SUBSUITES}"
        )
    builder = {
        "quasitriangle": _optrange_quasitriangle_cases,
        "minimality": _optrange_minimality_cases,
        "hilbert": _optrange_hilbert_cases,
    }[name]
    report = VerificationReport(
        suite=f"optrange/{name}", cases=[], environment=config.environment_echo()
    )
    report.extend(builder(config))
    return report
