"""The discrete averaging operator S and the discrete Hilbert transform H.

S acts on half-line sequences:

    (S x)(n) = (1/(n+1)) * sum_{k<=n} x(k)  +  sum_{k>n} x(k)/k.

Two evaluation routes are kept deliberately distinct so they can cross-check
each other: `calderon` uses one prefix-sum pass plus a suffix pass (fast), and
`calderon_min_kernel` evaluates the equivalent kernel form

    (S x)(n) = sum_k x(k) * min(1/k, 1/(n+1))      (k = 0 term: x(0)/(n+1))

by explicit kernel products (naive).  H acts on full-line sequences:

    (H x)(n) = (1/pi) * sum_{k != n} x(k)/(n-k),

with a blocked direct-summation route (naive) and a zero-padded FFT
convolution route (fast).  All extended-precision accumulation uses longdouble
cumulative sums; analytic inputs get certified per-index tail half-widths.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional, Sequence as TySequence, Union

import numpy as np
from scipy.signal import fftconvolve

from .report import CaseResult, FAIL, PASS
from .sequences import (
    FiniteSequence,
    IndexDomain,
    DomainMismatchError,
    PowerLogSequence,
    Rearrangement,
    Sequence,
    decreasing_rearrangement,
    dilate,
    materialize,
    weighted_tail_sum,
)

PI = math.pi

METHOD_NAIVE = "naive"
METHOD_FAST = "fast_convolution"
METHOD_CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class OperatorOutput:
    """Operator values on a contiguous index window.

    window_values[i] approximates the operator at index offset + i, with a
    certified error of at most tail_halfwidth_per_index[i] from truncating
    infinite inputs (exactly zero for finite-support inputs).
    """

    offset: int
    window_values: np.ndarray
    tail_halfwidth_per_index: np.ndarray
    evaluation_method: str

    def __post_init__(self):
        self.window_values.setflags(write=False)
        self.tail_halfwidth_per_index.setflags(write=False)
        if len(self.window_values) != len(self.tail_halfwidth_per_index):
            raise ValueError("values and half-widths must align")
        if np.any(self.tail_halfwidth_per_index < 0):
            raise ValueError("half-widths are nonnegative")

    def indices(self) -> np.ndarray:
        return self.offset + np.arange(len(self.window_values))

    def value_at(self, n: int) -> float:
        i = n - self.offset
        if not (0 <= i < len(self.window_values)):
            raise IndexError(f"index {n} outside output window")
        return float(self.window_values[i])


SType = Union[Sequence, Rearrangement]


def _half_line_window(x: SType, window: int) -> tuple[np.ndarray, float, float]:
    """(dense values on [0, window), beyond-window tail-sum mid, halfwidth)
    for the weighted tail sum_{k>=window} x(k)/k."""
    if isinstance(x, FiniteSequence):
        if x.domain is not IndexDomain.HALF_LINE:
            raise DomainMismatchError("S acts on half-line sequences")
        dense = x.dense(0, window)
        if x.end <= window:
            return dense, 0.0, 0.0
        b = weighted_tail_sum(x, window - 1)
        return dense, b.mid, b.halfwidth
    if isinstance(x, PowerLogSequence):
        b = weighted_tail_sum(x, window - 1)
        return x.head(window), b.mid, b.halfwidth
    if isinstance(x, Rearrangement):
        if x.is_zero:
            return np.zeros(window), 0.0, 0.0
        b = weighted_tail_sum(x, window - 1)
        return x.head(window), b.mid, b.halfwidth
    raise TypeError(f"not a sequence: {type(x)!r}")


def calderon(x: SType, window: int, tol: float = 1e-10) -> OperatorOutput:
    """Prefix-sum evaluation of S on [0, window)."""
    if window < 1:
        raise ValueError("window must be positive")
    dense, beyond_mid, beyond_hw = _half_line_window(x, window)
    ld = np.asarray(dense, dtype=np.longdouble)
    prefix = np.cumsum(ld)
    ns = np.arange(window, dtype=np.longdouble)
    head = prefix / (ns + 1.0)
    # within-window weighted suffix: sum_{k=n+1}^{window-1} x(k)/k
    w = np.zeros(window, dtype=np.longdouble)
    if window > 1:
        w[1:] = ld[1:] / np.arange(1, window, dtype=np.longdouble)
    total = np.sum(w)
    suffix = total - np.cumsum(w)
    values = (head + suffix + beyond_mid).astype(np.float64)
    hw = np.full(window, float(beyond_hw))
    return OperatorOutput(0, values, hw, METHOD_FAST)


def calderon_min_kernel(
    x: SType, window: int, eval_window: Optional[int] = None, tol: float = 1e-10
) -> OperatorOutput:
    """Kernel-product evaluation of S on [0, window): independent cross-check
    of `calderon` via the explicit min(1/k, 1/(n+1)) kernel."""
    if window < 1:
        raise ValueError("window must be positive")
    if isinstance(x, FiniteSequence):
        if x.domain is not IndexDomain.HALF_LINE:
            raise DomainMismatchError("S acts on half-line sequences")
        K = max(x.end, 1)
        dense = x.dense(0, K)
        beyond_mid = beyond_hw = 0.0
    else:
        K = eval_window if eval_window is not None else max(4 * window, 4096)
        if K <= window:
            raise ValueError("evaluation window must exceed the output window")
        dense, beyond_mid, beyond_hw = _half_line_window(x, K)
    with np.errstate(divide="ignore"):
        invk = 1.0 / np.arange(K, dtype=np.float64)  # inf at k = 0
    invn = 1.0 / (np.arange(window, dtype=np.float64) + 1.0)
    kernel = np.minimum(invk[None, :], invn[:, None])
    values = kernel @ dense + beyond_mid
    hw = np.full(window, float(beyond_hw))
    return OperatorOutput(0, values, hw, METHOD_NAIVE)


def kernel_values(n: int, ks: np.ndarray) -> np.ndarray:
    """The S kernel at row n: min(1/k, 1/(n+1)), with the k = 0 limit 1/(n+1)."""
    ks = np.asarray(ks, dtype=np.float64)
    with np.errstate(divide="ignore"):
        invk = np.where(ks > 0, 1.0 / np.maximum(ks, 1e-300), np.inf)
    return np.minimum(invk, 1.0 / (n + 1.0))


# ---------------------------------------------------------------------------
# Hilbert transform


def _hilbert_finite_naive(vals: np.ndarray, s0: int, out_lo: int, out_hi: int) -> np.ndarray:
    K = len(vals)
    n_out = out_hi - out_lo + 1
    out = np.empty(n_out, dtype=np.float64)
    block = max(1, (1 << 24) // max(K, 1))
    ks = s0 + np.arange(K, dtype=np.float64)
    for b0 in range(0, n_out, block):
        b1 = min(b0 + block, n_out)
        ns = out_lo + np.arange(b0, b1, dtype=np.float64)
        d = ns[:, None] - ks[None, :]
        with np.errstate(divide="ignore"):
            np.reciprocal(d, out=d)
        d[np.isinf(d)] = 0.0
        out[b0:b1] = d @ vals
    return out / PI


def _hilbert_finite_fast(vals: np.ndarray, s0: int, out_lo: int, out_hi: int) -> np.ndarray:
    K = len(vals)
    s1 = s0 + K - 1
    m_lo = out_lo - s1
    m_hi = out_hi - s0
    ms = np.arange(m_lo, m_hi + 1, dtype=np.float64)
    with np.errstate(divide="ignore"):
        g = 1.0 / ms
    g[ms == 0.0] = 0.0
    conv = fftconvolve(vals, g)
    # full convolution index j corresponds to output index s0 + m_lo + j
    j0 = out_lo - (s0 + m_lo)
    return conv[j0 : j0 + (out_hi - out_lo + 1)] / PI


def hilbert(
    x: SType,
    out_lo: int,
    out_hi: int,
    method: str = METHOD_FAST,
    analytic_window: int = 1 << 16,
) -> OperatorOutput:
    """(H x)(n) for n in [out_lo, out_hi] (inclusive).

    Finite supports are summed exactly (naive) or via zero-padded FFT linear
    convolution (fast).  Analytic half-line inputs are truncated at
    analytic_window and every output index carries the certified truncation
    half-width (2/pi) * sum_{k>=W} x(k)/k.
    """
    if out_lo > out_hi:
        raise ValueError("output window is empty")
    if method == "fast":
        method = METHOD_FAST
    if method not in (METHOD_NAIVE, METHOD_FAST):
        raise ValueError(f"unknown evaluation method: {method!r}")
    hw_uniform = 0.0
    if isinstance(x, (PowerLogSequence, Rearrangement)):
        W = analytic_window
        if 2 * max(abs(out_lo), abs(out_hi)) >= W:
            raise ValueError(
                "analytic truncation window must be at least twice the output range"
            )
        tail = weighted_tail_sum(x, W - 1)
        hw_uniform = 2.0 / PI * tail.hi
        x = materialize(x, W)
        x = FiniteSequence(IndexDomain.LINE, x.offset, x.values)
    if not isinstance(x, FiniteSequence):
        raise TypeError(f"not a sequence: {type(x)!r}")
    n_out = out_hi - out_lo + 1
    if x.is_zero:
        return OperatorOutput(
            out_lo, np.zeros(n_out), np.zeros(n_out), method
        )
    conv_len = n_out + len(x.values)
    if conv_len > (1 << 27):
        raise ValueError(f"convolution length {conv_len} exceeds the size limit 2^27")
    if method == METHOD_NAIVE:
        vals = _hilbert_finite_naive(x.values, x.offset, out_lo, out_hi)
    else:
        vals = _hilbert_finite_fast(x.values, x.offset, out_lo, out_hi)
    hw = np.full(n_out, hw_uniform)
    return OperatorOutput(out_lo, vals, hw, method)


def hilbert_symmetric(x: SType, halfwidth: int, method: str = METHOD_FAST) -> OperatorOutput:
    """H on the symmetric window [-halfwidth, halfwidth]."""
    return hilbert(x, -halfwidth, halfwidth, method)


# ---------------------------------------------------------------------------
# verification helpers (single-input; suites aggregate over families)


def verify_pointwise_domination(x: SType, window: int, tol: float = 1e-12) -> CaseResult:
    """|(S x)(n)| <= (S mu(x))(n) on the window."""
    sx = calderon(x, window)
    smu = calderon(decreasing_rearrangement(x), window)
    lhs = np.abs(sx.window_values) - sx.tail_halfwidth_per_index
    rhs = smu.window_values + smu.tail_halfwidth_per_index
    slack = tol * np.maximum(1.0, np.abs(rhs))
    excess = lhs - rhs - slack
    worst = float(np.max(excess))
    bad = int(np.sum(excess > 0))
    return CaseResult(
        name="pointwise_domination",
        status=PASS if bad == 0 else FAIL,
        observed_constant=worst,
        note=f"{bad} violations on window {window}",
    )


def verify_sd_rearrangement_fixed(x: SType, window: int) -> CaseResult:
    """S mu(x) is nonincreasing and bitwise equal to its own rearrangement."""
    smu = calderon(decreasing_rearrangement(x), window)
    v = smu.window_values
    nonincreasing = bool(np.all(np.diff(v) <= 0))
    fixed = bool(np.array_equal(np.sort(v)[::-1], v))
    ok = nonincreasing and fixed
    return CaseResult(
        name="rearrangement_fixed_point",
        status=PASS if ok else FAIL,
        observed_constant=float(np.max(np.diff(v))) if window > 1 else 0.0,
        note=f"nonincreasing={nonincreasing} fixed={fixed}",
    )


def verify_hilbert_lower_bound(
    x: FiniteSequence, window: int, tol: float = 1e-12, method: str = METHOD_NAIVE
) -> CaseResult:
    """(1/(2 pi)) (S x)(n) <= |(H x)(-n)| for n = 1..window, for nonnegative
    nonincreasing half-line x.  n = 0 is excluded: the comparison chain needs
    n + k >= 1 and the transform skips k = n there."""
    if not isinstance(x, FiniteSequence) or x.domain is not IndexDomain.HALF_LINE:
        raise DomainMismatchError("lower bound needs a finite half-line sequence")
    if x.offset != 0 or np.any(x.values < 0) or np.any(np.diff(x.values) > 0):
        raise ValueError("lower bound needs nonnegative nonincreasing values from index 0")
    sx = calderon(x, window + 1)
    xl = FiniteSequence(IndexDomain.LINE, x.offset, x.values)
    h = hilbert(xl, -window, -1, method)
    lhs = sx.window_values[1:] / (2.0 * PI)
    rhs = np.abs(h.window_values[::-1])  # index i -> n = i + 1
    slack = tol * np.maximum(1.0, rhs)
    excess = lhs - rhs - slack
    worst = float(np.max(excess))
    bad = int(np.sum(excess > 0))
    return CaseResult(
        name="hilbert_lower_bound",
        status=PASS if bad == 0 else FAIL,
        observed_constant=worst,
        note=f"{bad} violations for n in [1, {window}]",
    )


@dataclass(frozen=True)
class Weak11Estimate:
    constant: float
    constant_doubled: float
    window: int

    @property
    def relative_change(self) -> float:
        if self.constant == 0.0:
            return 0.0
        return abs(self.constant_doubled - self.constant) / self.constant


def estimate_weak11_constant(
    family: TySequence[FiniteSequence], window: int = 1 << 12
) -> Weak11Estimate:
    """sup over the family of |H x|_weak(symmetric window) / |x|_1, at the
    window and at its double (stability diagnostic)."""
    from .spaces import weak_l1_quasinorm
    from .sequences import finite

    sups = []
    for W in (window, 2 * window):
        worst = 0.0
        for x in family:
            l1 = x.l1()
            if l1 == 0.0:
                continue
            xl = FiniteSequence(IndexDomain.LINE, x.offset, x.values)
            h = hilbert_symmetric(xl, W, METHOD_FAST)
            wnorm = weak_l1_quasinorm(finite(h.window_values, h.offset, IndexDomain.LINE)).value
            worst = max(worst, wnorm / l1)
        sups.append(worst)
    return Weak11Estimate(sups[0], sups[1], window)


def estimate_hardy_constant(
    p: float, family: TySequence[FiniteSequence], out_window: int = 2048
) -> CaseResult:
    """Empirical sup of |S x|_p / |x|_p against the classical bound p + p/(p-1)."""
    from .spaces import lp_norm

    if not p > 1:
        raise ValueError("the bound p + p/(p-1) needs p > 1")
    bound = p + p / (p - 1.0)
    worst = 0.0
    for x in family:
        denom = lp_norm(x, p).value
        if denom == 0.0:
            continue
        sx = calderon(x, out_window)
        num = float(np.sum(np.abs(sx.window_values.astype(np.longdouble)) ** p)) ** (1.0 / p)
        worst = max(worst, num / denom)
    ok = worst <= bound + 1e-6
    return CaseResult(
        name=f"hardy_constant_p{p:g}",
        status=PASS if ok else FAIL,
        observed_constant=worst,
        note=f"bound {bound:g}",
    )


def fast_naive_agreement(x: FiniteSequence, halfwidth: int) -> float:
    """Max relative deviation fast vs naive on the symmetric window, measured
    only where |naive| > 1e-12."""
    a = hilbert_symmetric(x, halfwidth, METHOD_NAIVE).window_values
    b = hilbert_symmetric(x, halfwidth, METHOD_FAST).window_values
    mask = np.abs(a) > 1e-12
    if not np.any(mask):
        return 0.0
    return float(np.max(np.abs(a[mask] - b[mask]) / np.abs(a[mask])))


@dataclass(frozen=True)
class BenchRow:
    size: int
    naive_seconds: float
    fast_seconds: float
    max_relative_deviation: float

    @property
    def speedup(self) -> float:
        return self.naive_seconds / self.fast_seconds if self.fast_seconds > 0 else math.inf


def bench_hilbert(
    sizes: TySequence[int], seed: int = 1, out_cap: int = 1 << 13
) -> list[BenchRow]:
    """Wall-time comparison of the two H routes on random signed inputs of the
    given support sizes, on the symmetric window [-min(size, out_cap), ...]."""
    from .families import family_rng

    rows = []
    for size in sizes:
        if size < 1:
            raise ValueError("sizes must be positive")
        rng = family_rng("bench", seed, size)
        vals = rng.standard_normal(size)
        x = FiniteSequence(IndexDomain.LINE, 0, vals)
        half = min(size, out_cap)
        t0 = time.perf_counter()
        a = hilbert_symmetric(x, half, METHOD_NAIVE).window_values
        t1 = time.perf_counter()
        b = hilbert_symmetric(x, half, METHOD_FAST).window_values
        t2 = time.perf_counter()
        mask = np.abs(a) > 1e-12
        dev = float(np.max(np.abs(a[mask] - b[mask]) / np.abs(a[mask]))) if np.any(mask) else 0.0
        rows.append(BenchRow(size, t1 - t0, t2 - t1, dev))
    return rows


# ---------------------------------------------------------------------------
# structural properties


def verify_linearity(
    x1: FiniteSequence, x2: FiniteSequence, a1: float, a2: float, window: int, tol: float = 1e-12
) -> CaseResult:
    from .sequences import add_scaled

    combo = add_scaled(x1, a1, x2, a2)
    lhs = calderon(combo, window).window_values
    rhs = a1 * calderon(x1, window).window_values + a2 * calderon(x2, window).window_values
    scale = float(np.max(np.abs(rhs))) or 1.0
    dev = float(np.max(np.abs(lhs - rhs))) / max(scale, 1.0)
    return CaseResult(
        name="calderon_linearity",
        status=PASS if dev <= tol else FAIL,
        observed_constant=dev,
    )


def verify_kernel_monotonicity(rows: TySequence[int], k_max: int) -> CaseResult:
    """For each n, k -> min(1/k, 1/(n+1)) is nonincreasing on k >= 1."""
    ok = True
    for n in rows:
        vals = kernel_values(n, np.arange(1, k_max + 1))
        if np.any(np.diff(vals) > 0):
            ok = False
    return CaseResult(
        name="kernel_monotonicity",
        status=PASS if ok else FAIL,
        note=f"rows {list(rows)}, k up to {k_max}",
    )


def dilation_commutation_band(
    family: TySequence[FiniteSequence], ms: TySequence[int], window: int
) -> tuple[float, float]:
    """Measured band of (S sigma_m mu(y))(n) / (sigma_m S mu(y))(n) over the
    family, the given repetition factors, and the window."""
    lo, hi = math.inf, 0.0
    for y in family:
        mu = decreasing_rearrangement(y)
        base = calderon(mu, window).window_values
        for m in ms:
            mu_m = dilate(mu, m)
            lhs = calderon(mu_m, window).window_values
            rhs = base[np.arange(window) // m]
            mask = rhs > 0
            if not np.any(mask):
                continue
            r = lhs[mask] / rhs[mask]
            lo = min(lo, float(np.min(r)))
            hi = max(hi, float(np.max(r)))
    return lo, hi


def hilbert_even_cancellation(x: FiniteSequence, tol: float = 1e-12) -> CaseResult:
    """(H x)(0) vanishes for even full-line x (x(k) = x(-k))."""
    h = hilbert(x, 0, 0, METHOD_NAIVE)
    scale = max(x.l1(), 1.0)
    dev = abs(h.value_at(0)) / scale
    return CaseResult(
        name="hilbert_even_cancellation",
        status=PASS if dev <= tol else FAIL,
        observed_constant=dev,
    )
