"""Deterministic test-sequence families.

Every family is a pure function of (kind, count, seed): the stream is seeded
through SeedSequence([seed, crc32(kind)]) so distinct kinds draw independent
streams from the same user seed, and repeated calls are bit-identical.
"""

from __future__ import annotations

import zlib
from typing import List

import numpy as np

from .sequences import FiniteSequence, PowerLogSequence, Sequence, finite, power_log

FAMILY_RANDOM_SIGNED = "RandomSigned"
FAMILY_RANDOM_NONNEG_DECREASING = "RandomNonnegDecreasing"
FAMILY_POWER_LOG_GRID = "PowerLogGrid"
FAMILY_SPIKES = "Spikes"

FAMILY_KINDS = (
    FAMILY_RANDOM_SIGNED,
    FAMILY_RANDOM_NONNEG_DECREASING,
    FAMILY_POWER_LOG_GRID,
    FAMILY_SPIKES,
)

# (alpha, beta) cycle for PowerLogGrid; starts at the harmonic generator (1, 0)
POWER_LOG_GRID = (
    (1.0, 0.0),
    (1.25, 0.0),
    (1.5, 0.0),
    (2.0, 0.0),
    (1.0, 1.0),
    (1.5, 1.0),
    (0.5, 0.0),
    (1.0, 2.0),
)


def family_rng(name: str, seed: int, *extra: int) -> np.random.Generator:
    """Independent deterministic stream for a named consumer of a user seed."""
    entropy = [int(seed), zlib.crc32(name.encode("utf-8")), *map(int, extra)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def _random_signed(rng: np.random.Generator, count: int, max_support: int) -> List[FiniteSequence]:
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_support + 1))
        out.append(finite(rng.standard_normal(n)))
    return out


def _random_nonneg_decreasing(
    rng: np.random.Generator, count: int, max_support: int
) -> List[FiniteSequence]:
    out = []
    for _ in range(count):
        n = int(rng.integers(1, max_support + 1))
        v = np.sort(rng.random(n))[::-1]
        out.append(finite(v))
    return out


def _power_log_grid(rng: np.random.Generator, count: int) -> List[PowerLogSequence]:
    out = []
    for i in range(count):
        alpha, beta = POWER_LOG_GRID[i % len(POWER_LOG_GRID)]
        scale = 1.0 if i < len(POWER_LOG_GRID) else float(rng.uniform(0.5, 2.0))
        out.append(power_log(alpha, beta, scale))
    return out


def _spikes(rng: np.random.Generator, count: int, max_support: int) -> List[FiniteSequence]:
    out = []
    for _ in range(count):
        n = int(rng.integers(4, max_support + 1))
        v = np.zeros(n)
        k = int(rng.integers(1, min(4, n) + 1))
        pos = rng.choice(n, size=k, replace=False)
        v[pos] = rng.random(k) + 0.5
        out.append(finite(v))
    return out


def generate_family(
    kind: str, count: int, seed: int, max_support: int = 64
) -> List[Sequence]:
    """Deterministic list of `count` sequences of the requested kind."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if kind not in FAMILY_KINDS:
        raise ValueError(f"unknown family kind {kind!r}; choose one of {FAMILY_KINDS}")
    rng = family_rng(kind, seed)
    if kind == FAMILY_RANDOM_SIGNED:
        return _random_signed(rng, count, max_support)
    if kind == FAMILY_RANDOM_NONNEG_DECREASING:
        return _random_nonneg_decreasing(rng, count, max_support)
    if kind == FAMILY_POWER_LOG_GRID:
        return _power_log_grid(rng, count)
    return _spikes(rng, count, max_support)
