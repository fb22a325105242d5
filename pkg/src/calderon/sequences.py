"""Sequence models, decreasing rearrangement, dilation, and weighted tail sums.

Two concrete representations cover everything the package computes with:

* finite-support sequences: an integer offset plus an explicit value block,
  over the half line (indices 0, 1, 2, ...) or the full line;
* the analytic power-log family on the half line,

      x(k) = scale * log(k+2)**beta / (k+1)**alpha,   alpha > 0, beta >= 0,

  which contains the harmonic profile (alpha=1, beta=0) and is closed under
  the tail estimates in :mod:`calderon.brackets`.

The decreasing rearrangement mu(x) lists |x(k)| in nonincreasing order.  For
the power-log family the profile is nondecreasing then nonincreasing, so
beyond a computable index the rearrangement coincides with the profile
itself; a Rearrangement stores the sorted head and that analytic tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Union

import numpy as np

from .brackets import Bracket, ZERO_BRACKET, TailToleranceError, choose_tail_start

EULER_GAMMA = 0.5772156649015328606065120900824024

HEAD_SCAN_CAP = 2 ** 26


class IndexDomain(str, Enum):
    HALF_LINE = "half_line"
    LINE = "line"


class DomainMismatchError(ValueError):
    """Operation applied to a sequence on the wrong index domain or family."""


class HeadResolutionError(ValueError):
    """Analytic head cannot be resolved within the scan cap."""


def _as_float_array(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("sequence values must be one-dimensional")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("sequence values must be finite")
    return arr


@dataclass(frozen=True)
class FiniteSequence:
    """Finitely supported sequence: values[i] sits at index offset + i.

    Construct through :func:`finite`, which trims zero margins so the zero
    sequence has the single canonical form (offset 0, empty values).
    """

    domain: IndexDomain
    offset: int
    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)
        if self.domain is IndexDomain.HALF_LINE and self.offset < 0:
            raise DomainMismatchError("half-line sequence with negative support")

    @property
    def end(self) -> int:
        """One past the last support index."""
        return self.offset + len(self.values)

    @property
    def is_zero(self) -> bool:
        return len(self.values) == 0

    def value_at(self, k: int) -> float:
        if self.offset <= k < self.end:
            return float(self.values[k - self.offset])
        return 0.0

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Values on [lo, hi) as a contiguous array."""
        out = np.zeros(hi - lo, dtype=np.float64)
        a = max(lo, self.offset)
        b = min(hi, self.end)
        if a < b:
            out[a - lo : b - lo] = self.values[a - self.offset : b - self.offset]
        return out

    def total_sum(self) -> float:
        return float(np.sum(self.values, dtype=np.longdouble))

    def l1(self) -> float:
        return float(np.sum(np.abs(self.values), dtype=np.longdouble))


@dataclass(frozen=True)
class PowerLogSequence:
    """x(k) = scale * log(k+2)**beta / (k+1)**alpha on the half line."""

    alpha: float
    beta: float
    scale: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError("alpha must be a finite positive real")
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise ValueError("beta must be a finite nonnegative real")
        if not math.isfinite(self.scale):
            raise ValueError("scale must be finite")

    @property
    def domain(self) -> IndexDomain:
        return IndexDomain.HALF_LINE

    @property
    def is_zero(self) -> bool:
        return self.scale == 0.0

    @property
    def is_harmonic(self) -> bool:
        return self.alpha == 1.0 and self.beta == 0.0

    def values_at(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=np.float64)
        return self.scale * np.log(k + 2.0) ** self.beta / (k + 1.0) ** self.alpha

    def value_at(self, k: int) -> float:
        return float(self.values_at(np.float64(k)))

    def head(self, n: int) -> np.ndarray:
        return self.values_at(np.arange(n))

    @cached_property
    def monotone_from(self) -> int:
        """Index K with x nonincreasing on [K, inf): derivative sign gives
        beta*(t+1) <= alpha*(t+2)*log(t+2), which holds once log(t+2) >= beta/alpha."""
        if self.beta == 0.0:
            return 0
        return max(0, math.ceil(math.exp(self.beta / self.alpha) - 2.0))

    @cached_property
    def peak_index(self) -> int:
        K = self.monotone_from
        if K == 0:
            return 0
        if K > HEAD_SCAN_CAP:
            raise HeadResolutionError(
                f"power-log head peak beyond scan cap (alpha={self.alpha}, beta={self.beta})"
            )
        vals = np.abs(self.values_at(np.arange(K + 2)))
        return int(np.argmax(vals))


Sequence = Union[FiniteSequence, PowerLogSequence]


def finite(values, offset: int = 0, domain: IndexDomain = IndexDomain.HALF_LINE) -> FiniteSequence:
    """Finite-support sequence with zero margins trimmed to canonical form."""
    domain = IndexDomain(domain)
    arr = _as_float_array(values)
    nz = np.nonzero(arr)[0]
    if nz.size == 0:
        return FiniteSequence(domain, 0, np.empty(0, dtype=np.float64))
    first, last = int(nz[0]), int(nz[-1])
    return FiniteSequence(domain, offset + first, arr[first : last + 1].copy())


def zero(domain: IndexDomain = IndexDomain.HALF_LINE) -> FiniteSequence:
    return finite((), 0, domain)


def unit(n: int = 0, domain: IndexDomain = IndexDomain.HALF_LINE) -> FiniteSequence:
    """Coordinate sequence e_n."""
    return finite((1.0,), n, domain)


def power_log(alpha: float, beta: float, scale: float = 1.0) -> PowerLogSequence:
    return PowerLogSequence(alpha, beta, scale)


def harmonic_profile(scale: float = 1.0) -> PowerLogSequence:
    return PowerLogSequence(1.0, 0.0, scale)


# ---------------------------------------------------------------------------
# decreasing rearrangement


class ZeroTail:
    """Tail of a rearrangement that is exactly zero."""

    is_zero = True

    def values_at(self, k) -> np.ndarray:
        return np.zeros_like(np.asarray(k, dtype=np.float64))

    def __eq__(self, other):
        return isinstance(other, ZeroTail)

    def __hash__(self):
        return hash("ZeroTail")

    def __repr__(self):
        return "ZeroTail()"


@dataclass(frozen=True)
class PowerLogTail:
    """Analytic tail mu(k) = scale * log(k+2)**beta / (k+1)**alpha, absolute index k."""

    alpha: float
    beta: float
    scale: float

    is_zero = False

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError("rearrangement tail scale must be nonnegative")

    def values_at(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=np.float64)
        return self.scale * np.log(k + 2.0) ** self.beta / (k + 1.0) ** self.alpha


Tail = Union[ZeroTail, PowerLogTail]


@dataclass(frozen=True)
class Rearrangement:
    """Decreasing rearrangement: a sorted nonincreasing head plus a tail model.

    The head is valid verbatim; for analytic tails the profile formula gives
    mu(k) exactly for every k >= len(values).
    """

    values: np.ndarray
    tail: Tail = field(default_factory=ZeroTail)

    def __post_init__(self):
        self.values.setflags(write=False)
        v = self.values
        if v.size:
            if v[-1] < 0:
                raise ValueError("rearrangement values must be nonnegative")
            if np.any(np.diff(v) > 0):
                raise ValueError("rearrangement head must be nonincreasing")
        if isinstance(self.tail, PowerLogTail) and v.size:
            edge = float(self.tail.values_at(np.float64(len(v))))
            if edge > v[-1] * (1 + 1e-12) + 1e-300:
                raise ValueError("rearrangement tail exceeds head edge")

    @property
    def is_zero(self) -> bool:
        return self.values.size == 0 and self.tail.is_zero

    def head(self, n: int) -> np.ndarray:
        """First n rearranged values."""
        if n <= len(self.values):
            return self.values[:n]
        ext = self.tail.values_at(np.arange(len(self.values), n))
        return np.concatenate([self.values, ext])

    def value_at(self, n: int) -> float:
        if n < len(self.values):
            return float(self.values[n])
        return float(self.tail.values_at(np.float64(n)))

    def equals(self, other: "Rearrangement") -> bool:
        a, b = self.values, other.values
        n = max(len(a), len(b))
        return bool(np.array_equal(self.head(n), other.head(n))) and (
            type(self.tail) is type(other.tail) and self.tail == other.tail
        )


def _powerlog_settle_index(x: PowerLogSequence) -> int:
    """First index M with x(m) <= x(0) for all m >= M beyond the peak; from M
    on, the rearrangement equals the profile itself."""
    peak = x.peak_index
    if peak == 0:
        return 0
    x0 = abs(x.value_at(0))
    lo = peak + 1
    hi = lo
    while abs(x.value_at(hi)) > x0:
        hi *= 2
        if hi > HEAD_SCAN_CAP:
            raise HeadResolutionError(
                f"power-log head does not settle within cap (alpha={x.alpha}, beta={x.beta})"
            )
    while lo < hi:
        mid = (lo + hi) // 2
        if abs(x.value_at(mid)) <= x0:
            hi = mid
        else:
            lo = mid + 1
    return lo


def decreasing_rearrangement(x: Union[Sequence, Rearrangement]) -> Rearrangement:
    """mu(x): the values |x(k)| listed in nonincreasing order."""
    if isinstance(x, Rearrangement):
        return x
    if isinstance(x, FiniteSequence):
        vals = np.sort(np.abs(x.values))[::-1]
        nz = np.nonzero(vals)[0]
        vals = vals[: (int(nz[-1]) + 1) if nz.size else 0]
        return Rearrangement(vals.copy(), ZeroTail())
    if isinstance(x, PowerLogSequence):
        if x.is_zero:
            return Rearrangement(np.empty(0), ZeroTail())
        settle = _powerlog_settle_index(x)
        head_len = max(settle, 8)
        head = np.sort(np.abs(x.values_at(np.arange(head_len))))[::-1]
        return Rearrangement(head.copy(), PowerLogTail(x.alpha, x.beta, abs(x.scale)))
    raise TypeError(f"not a sequence: {type(x)!r}")


# ---------------------------------------------------------------------------
# dilation and scalar algebra


def dilate(x: Union[FiniteSequence, Rearrangement], m: int):
    """sigma_m: repeat every entry m times, (sigma_m x)(n) = x(floor(n/m))."""
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ValueError("dilation factor must be a positive integer")
    m = int(m)
    if isinstance(x, FiniteSequence):
        if x.domain is not IndexDomain.HALF_LINE:
            raise DomainMismatchError("dilation is defined on the half line")
        if x.is_zero:
            return x
        return FiniteSequence(x.domain, x.offset * m, np.repeat(x.values, m))
    if isinstance(x, Rearrangement):
        if not x.tail.is_zero:
            raise DomainMismatchError(
                "dilation of an analytic tail is not closed in the family; materialize a window first"
            )
        return Rearrangement(np.repeat(x.values, m), ZeroTail())
    if isinstance(x, PowerLogSequence):
        raise DomainMismatchError(
            "dilation of the power-log family is not closed in the family; materialize a window first"
        )
    raise TypeError(f"not a sequence: {type(x)!r}")


def add_scaled(x1: Sequence, a1: float, x2: Sequence, a2: float) -> Sequence:
    """a1*x1 + a2*x2 for representable combinations.

    Finite plus finite merges supports; power-log plus power-log requires the
    same (alpha, beta).  A finite perturbation of an analytic profile has no
    closed representation here: materialize first.
    """
    if isinstance(x1, FiniteSequence) and isinstance(x2, FiniteSequence):
        if x1.domain is not x2.domain:
            raise DomainMismatchError("cannot combine sequences on different index domains")
        if x1.is_zero and x2.is_zero:
            return zero(x1.domain)
        if x1.is_zero:
            return finite(a2 * x2.values, x2.offset, x2.domain)
        if x2.is_zero:
            return finite(a1 * x1.values, x1.offset, x1.domain)
        lo = min(x1.offset, x2.offset)
        hi = max(x1.end, x2.end)
        out = np.zeros(hi - lo, dtype=np.float64)
        out[x1.offset - lo : x1.end - lo] += a1 * x1.values
        out[x2.offset - lo : x2.end - lo] += a2 * x2.values
        return finite(out, lo, x1.domain)
    if isinstance(x1, PowerLogSequence) and isinstance(x2, PowerLogSequence):
        if (x1.alpha, x1.beta) != (x2.alpha, x2.beta):
            raise DomainMismatchError("power-log combination requires matching (alpha, beta)")
        return PowerLogSequence(x1.alpha, x1.beta, a1 * x1.scale + a2 * x2.scale)
    raise DomainMismatchError(
        "mixed finite/analytic combination is not representable; materialize the analytic part"
    )


def materialize(x: Union[Sequence, Rearrangement], n: int) -> FiniteSequence:
    """First n values of x as a finite-support sequence on the same domain."""
    if isinstance(x, FiniteSequence):
        return finite(x.dense(x.offset, min(x.end, x.offset + n)), x.offset, x.domain)
    if isinstance(x, PowerLogSequence):
        return finite(x.head(n), 0, IndexDomain.HALF_LINE)
    if isinstance(x, Rearrangement):
        return finite(x.head(n), 0, IndexDomain.HALF_LINE)
    raise TypeError(f"not a sequence: {type(x)!r}")


# ---------------------------------------------------------------------------
# weighted tail sums  sum_{k > n} x(k)/k


def weighted_tail_sum(
    x: Union[Sequence, Rearrangement],
    n: int,
    tol: float = 1e-10,
    cap: int = 2 ** 24,
) -> Bracket:
    """Certified value of sum_{k=n+1}^inf x(k)/k.

    Exact for finite supports.  For power-log data the harmonic profile
    telescopes to scale/(n+1); otherwise an explicit window is summed and the
    remainder bracketed, extending the window until the half-width meets tol.
    """
    if n < 0:
        raise ValueError("tail sums start at n >= 0")
    if isinstance(x, FiniteSequence):
        if x.domain is not IndexDomain.HALF_LINE:
            raise DomainMismatchError("weighted tail sums live on the half line")
        a = max(n + 1, x.offset, 1)
        if a >= x.end:
            return ZERO_BRACKET
        ks = np.arange(a, x.end, dtype=np.float64)
        vals = x.values[a - x.offset :]
        total = float(np.sum(np.asarray(vals, dtype=np.longdouble) / ks))
        return Bracket(total, total)
    if isinstance(x, PowerLogSequence):
        return _powerlog_weighted_tail(x.alpha, x.beta, x.scale, n, tol, cap)
    if isinstance(x, Rearrangement):
        W = len(x.values)
        head_part = ZERO_BRACKET
        a = max(n + 1, 1)
        if a < W:
            ks = np.arange(a, W, dtype=np.float64)
            t = float(np.sum(np.asarray(x.values[a:], dtype=np.longdouble) / ks))
            head_part = Bracket(t, t)
        if x.tail.is_zero:
            return head_part
        t = x.tail
        beyond = _powerlog_weighted_tail(t.alpha, t.beta, t.scale, max(n, W - 1), tol, cap, floor_start=W)
        return head_part + beyond
    raise TypeError(f"not a sequence: {type(x)!r}")


def _powerlog_weighted_tail(
    alpha: float,
    beta: float,
    scale: float,
    n: int,
    tol: float,
    cap: int,
    floor_start: int | None = None,
) -> Bracket:
    s = abs(scale)
    sign = 1.0 if scale >= 0 else -1.0
    if s == 0.0:
        return ZERO_BRACKET
    first = n + 1 if floor_start is None else max(n + 1, floor_start)
    if alpha == 1.0 and beta == 0.0:
        # sum_{k >= first} 1/(k(k+1)) telescopes to 1/first
        val = sign * s / first
        return Bracket(val, val)
    start, rem = choose_tail_start(
        alpha, beta, first, tol, harmonic_weight=True, scale=s, cap=cap
    )
    if rem.halfwidth > tol:
        raise TailToleranceError(
            f"tail half-width {rem.halfwidth:.3e} above tolerance {tol:.3e} at cap"
        )
    partial = 0.0
    if start > first:
        ks = np.arange(first, start, dtype=np.float64)
        vals = s * np.log(ks + 2.0) ** beta / (ks + 1.0) ** alpha
        partial = float(np.sum(np.asarray(vals, dtype=np.longdouble) / ks))
    out = rem.shifted(partial)
    if sign < 0:
        return Bracket(-out.hi, -out.lo)
    return out


# ---------------------------------------------------------------------------
# harmonic numbers (exact small, asymptotic large)


def harmonic_number(m: int) -> float:
    """H_m = sum_{j=1}^m 1/j; asymptotic expansion beyond 4096 terms
    (remainder below 1/(252 m**6), far under double precision there)."""
    if m < 0:
        raise ValueError("harmonic numbers need m >= 0")
    if m == 0:
        return 0.0
    if m <= 4096:
        return float(math.fsum(1.0 / j for j in range(1, m + 1)))
    fm = float(m)
    return (
        math.log(fm)
        + EULER_GAMMA
        + 1.0 / (2.0 * fm)
        - 1.0 / (12.0 * fm ** 2)
        + 1.0 / (120.0 * fm ** 4)
    )


def harmonic_numbers(count: int) -> np.ndarray:
    """Array [H_1, ..., H_count] via extended-precision cumulative sums."""
    recip = 1.0 / np.arange(1, count + 1, dtype=np.longdouble)
    return np.cumsum(recip).astype(np.float64)


# ---------------------------------------------------------------------------
# JSON wire format


_FINITE_KEYS = {"domain", "kind", "offset", "values"}
_POWERLOG_KEYS = {"kind", "alpha", "beta"}
_POWERLOG_OPT = {"scale"}


def sequence_to_json(x: Sequence) -> dict:
    if isinstance(x, FiniteSequence):
        return {
            "domain": x.domain.value,
            "kind": "finite",
            "offset": int(x.offset),
            "values": [float(v) for v in x.values],
        }
    if isinstance(x, PowerLogSequence):
        d = {"kind": "power_log", "alpha": float(x.alpha), "beta": float(x.beta)}
        if x.scale != 1.0:
            d["scale"] = float(x.scale)
        return d
    raise TypeError(f"not a serializable sequence: {type(x)!r}")


def sequence_from_json(d: dict) -> Sequence:
    if not isinstance(d, dict):
        raise ValueError("sequence document must be a JSON object")
    kind = d.get("kind")
    if kind == "finite":
        extra = set(d) - _FINITE_KEYS
        if extra:
            raise ValueError(f"unknown fields in finite sequence: {sorted(extra)}")
        missing = _FINITE_KEYS - set(d)
        if missing:
            raise ValueError(f"missing fields in finite sequence: {sorted(missing)}")
        if not isinstance(d["offset"], int) or isinstance(d["offset"], bool):
            raise ValueError("offset must be an integer")
        return finite(d["values"], d["offset"], IndexDomain(d["domain"]))
    if kind == "power_log":
        extra = set(d) - _POWERLOG_KEYS - _POWERLOG_OPT
        if extra:
            raise ValueError(f"unknown fields in power_log sequence: {sorted(extra)}")
        missing = _POWERLOG_KEYS - set(d)
        if missing:
            raise ValueError(f"missing fields in power_log sequence: {sorted(missing)}")
        return PowerLogSequence(float(d["alpha"]), float(d["beta"]), float(d.get("scale", 1.0)))
    raise ValueError(f"unknown sequence kind: {kind!r}")


# widely used alternative names for the same operations
dilation = dilate
tail_sum_over_k = weighted_tail_sum
