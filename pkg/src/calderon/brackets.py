"""Certified brackets for tails of power-log series.

Everything here reduces to sums of the shape

    sum_{k >= N} log(k+2)**beta / (k+1)**s          (optionally times 1/k)

with s > 1, beta >= 0.  The bounds come from two elementary comparisons:

* log(k+2) and log(k+1) differ by a factor at most log(N+2)/log(N+1) on
  k >= N, and 1/k sits between 1/(k+1) and (N+1)/N * 1/(k+1);
* the integral test for the decreasing integrand (log u)**beta * u**(-s),
  whose integral has the closed form
      (s-1)**-(beta+1) * Gamma(beta+1, (s-1) log U).

The resulting [lower, upper] interval is exact mathematics up to floating
point roundoff; callers shrink it by pushing N outward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import special as _sp


class DivergentTailError(ArithmeticError):
    """Requested sum has a non-summable tail."""


class TailToleranceError(ArithmeticError):
    """Bracket half-width cannot reach the requested tolerance within the cap."""


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"empty bracket [{self.lo}, {self.hi}]")

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def halfwidth(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def scaled(self, c: float) -> "Bracket":
        if c < 0:
            raise ValueError("bracket scale must be nonnegative")
        return Bracket(self.lo * c, self.hi * c)

    def shifted(self, t: float) -> "Bracket":
        return Bracket(self.lo + t, self.hi + t)

    def __add__(self, other: "Bracket") -> "Bracket":
        return Bracket(self.lo + other.lo, self.hi + other.hi)


ZERO_BRACKET = Bracket(0.0, 0.0)


def upper_gamma(a: float, x: float) -> float:
    """Upper incomplete gamma Gamma(a, x), a > 0, x >= 0."""
    return float(_sp.gammaincc(a, x) * _sp.gamma(a))


def log_power_integral(beta: float, s: float, U: float) -> float:
    """integral_U^inf (log u)**beta * u**(-s) du  for s > 1, U > 1."""
    if s <= 1.0:
        raise DivergentTailError(f"integral exponent s={s} <= 1")
    lam = s - 1.0
    return upper_gamma(beta + 1.0, lam * math.log(U)) / lam ** (beta + 1.0)


def monotone_start(beta: float, s: float) -> int:
    """Smallest integer U with (log u)**beta * u**(-s) nonincreasing on [U, inf)."""
    if beta <= 0.0:
        return 2
    return max(2, math.ceil(math.exp(beta / s)))


def log_power_sum_bracket(beta: float, s: float, U: int) -> Bracket:
    """Bracket for sum_{u >= U, u integer} (log u)**beta * u**(-s).

    Requires U at least monotone_start(beta, s) so the integral test applies.
    """
    if s <= 1.0:
        raise DivergentTailError(f"sum exponent s={s} <= 1")
    if U < monotone_start(beta, s):
        raise ValueError(f"start U={U} below monotone region for beta={beta}, s={s}")
    I = log_power_integral(beta, s, float(U))
    phi = math.log(U) ** beta * float(U) ** (-s)
    return Bracket(I, I + phi)


def powerlog_tail(
    alpha: float,
    beta: float,
    start: int,
    *,
    shift_power: float = 0.0,
    harmonic_weight: bool = False,
    scale: float = 1.0,
) -> Bracket:
    """Bracket for sum_{k >= start} scale * log(k+2)**beta / (k+1)**(alpha+shift_power) * w(k)

    with w(k) = 1/k when harmonic_weight else 1.  start must be >= 1 for the
    harmonic weight and large enough for the monotone comparison; use
    min_tail_start to pick a safe value.
    """
    if scale < 0:
        raise ValueError("scale must be nonnegative")
    if scale == 0.0:
        return ZERO_BRACKET
    s = alpha + shift_power + (1.0 if harmonic_weight else 0.0)
    if s <= 1.0:
        raise DivergentTailError(
            f"tail exponent {s} <= 1 (alpha={alpha}, shift={shift_power})"
        )
    if start < min_tail_start(alpha, beta, shift_power=shift_power, harmonic_weight=harmonic_weight):
        raise ValueError(f"tail start {start} below safe comparison region")
    base = log_power_sum_bracket(beta, s, start + 1)
    r = math.log(start + 2) / math.log(start + 1)
    fac = r ** beta
    if harmonic_weight:
        fac *= (start + 1) / start
    return Bracket(scale * base.lo, scale * fac * base.hi)


def min_tail_start(
    alpha: float,
    beta: float,
    *,
    shift_power: float = 0.0,
    harmonic_weight: bool = False,
) -> int:
    s = alpha + shift_power + (1.0 if harmonic_weight else 0.0)
    return max(2 if harmonic_weight else 1, monotone_start(beta, s) - 1)


def choose_tail_start(
    alpha: float,
    beta: float,
    min_start: int,
    tol: float,
    *,
    shift_power: float = 0.0,
    harmonic_weight: bool = False,
    scale: float = 1.0,
    cap: int = 2 ** 24,
) -> tuple[int, Bracket]:
    """Pick a start index whose tail bracket has half-width <= tol, doubling
    outward from min_start.  Returns the best (start, bracket) found; callers
    that need the tolerance met must check and raise TailToleranceError.
    """
    start = max(min_start, min_tail_start(alpha, beta, shift_power=shift_power, harmonic_weight=harmonic_weight))
    best = powerlog_tail(alpha, beta, start, shift_power=shift_power, harmonic_weight=harmonic_weight, scale=scale)
    while best.halfwidth > tol and start < cap:
        start = min(cap, 2 * start)
        best = powerlog_tail(alpha, beta, start, shift_power=shift_power, harmonic_weight=harmonic_weight, scale=scale)
    return start, best


def ratio_profile_sup(a: float, b: float, start: int, scale: float = 1.0) -> float:
    """Certified sup over integer t >= start of scale * log(t+2)**b * (t+1)**(-a).

    Finite exactly when a > 0, or a == 0 with b <= 0.  The profile is
    nondecreasing then nonincreasing with real peak at t* = exp(b/a) - 2, so
    the discrete sup sits at start or at the integers flanking t*.
    """
    if scale == 0.0:
        return 0.0
    if scale < 0:
        raise ValueError("scale must be nonnegative")

    def psi(t: float) -> float:
        return scale * math.log(t + 2.0) ** b * (t + 1.0) ** (-a)

    if a < 0.0 or (a == 0.0 and b > 0.0):
        return math.inf
    if a == 0.0:
        return psi(float(start))
    if b <= 0.0:
        return psi(float(start))
    log_tstar = b / a
    if log_tstar <= math.log(start + 2.0):
        return psi(float(start))
    if log_tstar > 36.0:  # peak index beyond exact float indexing; use the real max
        log_peak = math.log(scale) + b * math.log(log_tstar) - a * log_tstar if scale > 0 else -math.inf
        # (t+1)**-a at the peak: t+2 = e^{b/a}, and (t+1) >= (t+2)/2 there
        return math.exp(log_peak) * 2.0 ** a
    tstar = math.exp(log_tstar) - 2.0
    lo = max(start, math.floor(tstar))
    cands = [float(start), float(lo), float(lo + 1), float(lo + 2)]
    return max(psi(t) for t in cands if t >= start)
