import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from calderon.families import family_rng, generate_family
from calderon.operators import (
    METHOD_FAST,
    METHOD_NAIVE,
    OperatorOutput,
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
from calderon.optimal_range import harmonic_calderon_closed_form
from calderon.report import PASS
from calderon.sequences import (
    DomainMismatchError,
    FiniteSequence,
    IndexDomain,
    decreasing_rearrangement,
    dilate,
    finite,
    power_log,
)
from calderon.spaces import weak_l1_quasinorm

finite_values = st.lists(
    st.floats(min_value=-100, max_value=100, allow_nan=False, width=64),
    min_size=1,
    max_size=24,
)


def brute_calderon(vals, n):
    """(S x)(n) by direct fsum over the support: average of the first n+1
    entries plus the weighted tail sum_{k > n} x(k)/k."""
    head = math.fsum(vals[: n + 1]) / (n + 1)
    tail = math.fsum(vals[k] / k for k in range(n + 1, len(vals)))
    return head + tail


def brute_hilbert(vals, offset, n):
    """(H x)(n) by direct fsum with the 1/(pi (n - k)) kernel, k != n."""
    return math.fsum(
        v / (n - (offset + j)) for j, v in enumerate(vals) if offset + j != n
    ) / math.pi


# ---------------------------------------------------------------------------
# averaging operator S


@settings(deadline=None, max_examples=50, derandomize=True)
@given(finite_values)
def test_calderon_matches_brute_oracle(vals):
    x = finite(vals)
    out = calderon(x, 12)
    for n in range(12):
        expected = brute_calderon(list(x.dense(0, max(len(vals), 12))), n)
        assert out.value_at(n) == pytest.approx(expected, rel=1e-12, abs=1e-12)
        assert out.tail_halfwidth_per_index[n] == 0.0


@settings(deadline=None, max_examples=50, derandomize=True)
@given(finite_values)
def test_min_kernel_route_agrees_with_prefix_route(vals):
    x = finite(vals)
    a = calderon(x, 10).window_values
    b = calderon_min_kernel(x, 10).window_values
    assert np.allclose(a, b, rtol=1e-11, atol=1e-11)


def test_calderon_analytic_tail_bracket_contains_brute():
    x = power_log(1.5, 1.0)
    out = calderon(x, 8)
    big = 1 << 21
    dense = list(x.values_at(np.arange(big, dtype=np.float64)))
    for n in range(8):
        expected = brute_calderon(dense, n)
        hw = out.tail_halfwidth_per_index[n]
        # the brute sum itself is missing at most the tiny k >= 2^21 tail
        assert abs(out.window_values[n] - expected) <= hw + 1e-6


def test_calderon_harmonic_profile_closed_form():
    out = calderon(power_log(1.0, 0.0), 64)
    for n in range(64):
        assert out.value_at(n) == pytest.approx(
            harmonic_calderon_closed_form(n), rel=1e-12, abs=1e-12
        )
    assert out.value_at(0) == pytest.approx(2.0, abs=1e-12)
    assert out.value_at(1) == pytest.approx(1.25, abs=1e-12)


def test_harmonic_closed_form_values():
    assert harmonic_calderon_closed_form(0) == 2.0
    assert harmonic_calderon_closed_form(1) == 1.25
    # (H_3 + 1) / 3
    assert harmonic_calderon_closed_form(2) == pytest.approx((11.0 / 6.0 + 1.0) / 3.0, rel=1e-15)
    with pytest.raises(ValueError):
        harmonic_calderon_closed_form(-1)


def test_calderon_rejects_line_domain():
    x = finite([1.0], offset=-1, domain=IndexDomain.LINE)
    with pytest.raises(DomainMismatchError):
        calderon(x, 4)


def test_calderon_rejects_empty_window():
    with pytest.raises(ValueError):
        calderon(finite([1.0]), 0)
    with pytest.raises(ValueError):
        calderon_min_kernel(finite([1.0]), 0)


def test_min_kernel_eval_window_must_exceed_output():
    with pytest.raises(ValueError):
        calderon_min_kernel(power_log(1.0, 0.0), 16, eval_window=16)


def test_kernel_values_row():
    ks = np.arange(0, 10)
    row = kernel_values(3, ks)
    assert row[0] == 0.25  # k = 0 limit is 1/(n+1)
    assert row[1] == 0.25 and row[2] == 0.25 and row[3] == 0.25
    assert row[4] == 0.25  # min(1/4, 1/4)
    assert row[5] == 0.2
    assert np.all(np.diff(row) <= 0)


def test_verify_kernel_monotonicity_passes():
    assert verify_kernel_monotonicity((0, 1, 5, 64), 512).status == PASS


@settings(deadline=None, max_examples=40, derandomize=True)
@given(finite_values, finite_values)
def test_linearity_property(v1, v2):
    res = verify_linearity(finite(v1), finite(v2), 2.5, -1.25, window=16)
    assert res.status == PASS


def test_positivity_and_monotone_image():
    rng = family_rng("test-positivity", 3)
    for _ in range(20):
        x = finite(np.abs(rng.standard_normal(12)))
        out = calderon(x, 32).window_values
        assert np.all(out >= -1e-15)
        assert np.all(np.diff(out) <= 1e-12)


@settings(deadline=None, max_examples=40, derandomize=True)
@given(finite_values)
def test_pointwise_domination_property(vals):
    res = verify_pointwise_domination(finite(vals), window=32)
    assert res.status == PASS


def test_image_of_monotone_is_own_rearrangement():
    mu = decreasing_rearrangement(finite([4.0, 2.0, 1.0, 0.5]))
    res = verify_sd_rearrangement_fixed(mu, window=32)
    assert res.status == PASS


def test_dilation_commutation_band_two_sided():
    fam = [finite(np.abs(family_rng("test-band", 5, i).standard_normal(12)))
           for i in range(10)]
    lo, hi = dilation_commutation_band(fam, (2, 4, 8), window=256)
    assert 0.2 <= lo <= hi <= 5.0


def test_dilation_commutation_not_exact():
    # mu = (1, 1), m = 2: (S sigma_2 mu)(0) = 1 + 1 + 1/2 + 1/3 != (S mu)(0) = 2
    mu = decreasing_rearrangement(finite([1.0, 1.0]))
    lhs = calderon(dilate(mu, 2), 1).value_at(0)
    rhs = calderon(mu, 1).value_at(0)
    assert lhs == pytest.approx(1.0 + 1.0 + 0.5 + 1.0 / 3.0, rel=1e-14)
    assert abs(lhs / rhs - 1.0) > 0.1


def test_hardy_constant_within_classical_bound():
    fam = generate_family("RandomSigned", 60, seed=11)
    for p in (1.5, 2.0, 3.0):
        res = estimate_hardy_constant(p, fam)
        assert res.status == PASS
        assert res.observed_constant <= p + p / (p - 1.0)


def test_hardy_rejects_p_one():
    with pytest.raises(ValueError):
        estimate_hardy_constant(1.0, [finite([1.0])])


# ---------------------------------------------------------------------------
# Hilbert transform H


@settings(deadline=None, max_examples=50, derandomize=True)
@given(finite_values, st.integers(min_value=-6, max_value=6))
def test_hilbert_naive_matches_brute_oracle(vals, offset):
    x = FiniteSequence(IndexDomain.LINE, offset, np.asarray(vals, dtype=np.float64))
    if x.is_zero:
        return
    out = hilbert(x, -8, 8, METHOD_NAIVE)
    for n in range(-8, 9):
        expected = brute_hilbert(x.values, x.offset, n)
        assert out.value_at(n) == pytest.approx(expected, rel=1e-11, abs=1e-11)


@settings(deadline=None, max_examples=50, derandomize=True)
@given(finite_values, st.integers(min_value=-6, max_value=6))
def test_hilbert_fast_matches_brute_oracle(vals, offset):
    x = FiniteSequence(IndexDomain.LINE, offset, np.asarray(vals, dtype=np.float64))
    if x.is_zero:
        return
    out = hilbert(x, -8, 8, METHOD_FAST)
    for n in range(-8, 9):
        expected = brute_hilbert(x.values, x.offset, n)
        assert out.value_at(n) == pytest.approx(expected, rel=1e-9, abs=1e-9)


def test_hilbert_of_unit_impulse():
    e0 = FiniteSequence(IndexDomain.LINE, 0, np.array([1.0]))
    out = hilbert_symmetric(e0, 5, METHOD_NAIVE)
    assert out.value_at(0) == 0.0
    for n in (1, 2, 3, 4, 5):
        assert out.value_at(n) == pytest.approx(1.0 / (math.pi * n), rel=1e-15)
        assert out.value_at(-n) == pytest.approx(-1.0 / (math.pi * n), rel=1e-15)


def test_unit_impulse_weak_constant_is_two_over_pi():
    e0 = FiniteSequence(IndexDomain.LINE, 0, np.array([1.0]))
    h = hilbert_symmetric(e0, 64, METHOD_NAIVE)
    w = weak_l1_quasinorm(
        finite(h.window_values, offset=h.offset, domain=IndexDomain.LINE)
    ).value
    assert w == pytest.approx(2.0 / math.pi, abs=1e-12)


def test_hilbert_analytic_input_carries_certified_halfwidth():
    out = hilbert(power_log(1.5, 0.0), -4, 4, METHOD_FAST, analytic_window=1 << 12)
    assert np.all(out.tail_halfwidth_per_index > 0)
    ref = hilbert(power_log(1.5, 0.0), -4, 4, METHOD_FAST, analytic_window=1 << 14)
    # enlarging the truncation moves values by less than the certified width
    assert np.all(
        np.abs(out.window_values - ref.window_values)
        <= out.tail_halfwidth_per_index + 1e-12
    )


def test_hilbert_analytic_window_must_cover_output():
    with pytest.raises(ValueError):
        hilbert(power_log(1.5, 0.0), -100, 100, analytic_window=128)


def test_hilbert_rejects_bad_method_and_window():
    x = FiniteSequence(IndexDomain.LINE, 0, np.array([1.0]))
    with pytest.raises(ValueError):
        hilbert(x, 2, 1)
    with pytest.raises(ValueError):
        hilbert(x, 0, 1, method="magic")


def test_hilbert_method_alias_fast():
    x = FiniteSequence(IndexDomain.LINE, 0, np.array([1.0, -2.0]))
    a = hilbert(x, -3, 3, "fast").window_values
    b = hilbert(x, -3, 3, METHOD_FAST).window_values
    assert np.array_equal(a, b)


def test_fast_naive_agreement_small():
    rng = family_rng("test-agreement", 2)
    x = FiniteSequence(IndexDomain.LINE, -16, rng.standard_normal(256))
    assert fast_naive_agreement(x, 256) <= 1e-9


def test_hilbert_even_cancellation_exact():
    vals = np.array([3.0, 1.0, 2.0, 1.0, 3.0])
    x = FiniteSequence(IndexDomain.LINE, -2, vals)
    res = hilbert_even_cancellation(x)
    assert res.status == PASS
    assert res.observed_constant <= 1e-15


def test_hilbert_lower_bound_single_case():
    x = finite([4.0, 3.0, 2.0, 1.0])
    res = verify_hilbert_lower_bound(x, window=64)
    assert res.status == PASS
    with pytest.raises(ValueError):
        verify_hilbert_lower_bound(finite([1.0, 2.0]), window=8)


def test_hilbert_reflected_lower_bound_brute():
    # for nonnegative nonincreasing x: (1/2pi)(S x)(n) <= |(H x)(-n)|, n >= 1
    vals = [5.0, 2.0, 1.0, 0.5, 0.25]
    x = finite(vals)
    s = calderon(x, 16)
    xl = FiniteSequence(IndexDomain.LINE, 0, np.asarray(vals))
    for n in range(1, 16):
        lhs = s.value_at(n) / (2.0 * math.pi)
        rhs = abs(brute_hilbert(xl.values, 0, -n))
        assert lhs <= rhs + 1e-12


def test_bench_hilbert_rows():
    rows = bench_hilbert([256, 512], seed=1)
    assert [r.size for r in rows] == [256, 512]
    for r in rows:
        assert r.naive_seconds > 0 and r.fast_seconds > 0
        assert r.max_relative_deviation <= 1e-9
        assert r.speedup == r.naive_seconds / r.fast_seconds
    with pytest.raises(ValueError):
        bench_hilbert([0])


def test_weak11_estimate_stable():
    fam = generate_family("RandomSigned", 20, seed=5)
    norm = [FiniteSequence(IndexDomain.LINE, f.offset, f.values / f.l1()) for f in fam]
    est = estimate_weak11_constant(norm, window=1 << 9)
    assert 0 < est.constant < math.inf
    assert est.relative_change <= 0.25


# ---------------------------------------------------------------------------
# output container


def test_operator_output_validation_and_access():
    out = OperatorOutput(-2, np.array([1.0, 2.0]), np.array([0.0, 0.0]), METHOD_NAIVE)
    assert list(out.indices()) == [-2, -1]
    assert out.value_at(-1) == 2.0
    with pytest.raises(IndexError):
        out.value_at(0)
    with pytest.raises(ValueError):
        OperatorOutput(0, np.array([1.0]), np.array([-1.0]), METHOD_NAIVE)
    with pytest.raises(ValueError):
        OperatorOutput(0, np.array([1.0]), np.array([0.0, 0.0]), METHOD_NAIVE)
    assert not out.window_values.flags.writeable
