"""Segmented sieve of Eratosthenes."""

from __future__ import annotations

import math
from collections.abc import Iterator

import numpy as np

_SEGMENT = 1 << 18


def _base_primes(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


def prime_iter(lo: int, hi: int) -> Iterator[int]:
    """Yield the primes in [lo, hi] in increasing order."""
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    lo = max(lo, 2)
    if hi < 2:
        return
    base = _base_primes(math.isqrt(hi))
    for start in range(lo, hi + 1, _SEGMENT):
        stop = min(start + _SEGMENT, hi + 1)
        seg = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            seg[first - start :: p] = False
        for off in np.flatnonzero(seg):
            yield start + int(off)


def primes_upto(n: int) -> list[int]:
    return list(prime_iter(2, n)) if n >= 2 else []
