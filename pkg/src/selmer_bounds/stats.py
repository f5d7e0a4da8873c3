"""Enumeration experiments over the curve family at height X.

Each experiment is a map over A-shards followed by an integer sum, so the
report does not depend on the number of shards or on scheduling.
Rows of B values are processed with numpy; membership uses a table of
prime powers rather than factoring.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import bounds
from . import numfield as nf
from .arith import factorize, iroot, primes_upto
from .curves import CurveParams, coefficient_bounds, shard_ranges
from .localdata import g0_cap, genus_bound

# 40 correct digits of pi on each side.
_PI_LO = Fraction(31415926535897932384626433832795028841971, 10**40)
_PI_HI = _PI_LO + Fraction(1, 10**40)


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    X: int
    shards: int
    observed: Fraction
    predicted: Fraction
    params: str = ""

    @property
    def abs_error(self) -> Fraction:
        return abs(self.observed - self.predicted)

    @property
    def rel_error(self) -> float:
        return float(self.abs_error / self.predicted) if self.predicted else float("inf")

    def to_line(self) -> str:
        return "\t".join(
            [
                self.name,
                str(self.X),
                self.params or "-",
                _q(self.observed),
                _q(self.predicted),
                f"{float(self.observed):.6f}",
                f"{float(self.predicted):.6f}",
                f"{float(self.abs_error):.6f}",
            ]
        )


HEADER = "#experiment\tX\tparams\tobserved\tpredicted\tobserved_float\tpredicted_float\tabs_error"


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def zeta10() -> bounds.BoundInterval:
    """Enclosure of zeta(10) = pi^10 / 93555."""
    return bounds.BoundInterval(_PI_LO**10 / 93555, _PI_HI**10 / 93555)


def predicted_count(X: int) -> bounds.BoundInterval:
    """Enclosure of 4 X^(5/6) / zeta(10)."""
    scale = 10**15
    r = iroot(X**5 * scale**6, 6)
    root = bounds.BoundInterval(Fraction(r, scale), Fraction(r + 1, scale))
    z = zeta10()
    return bounds.BoundInterval(4 * root.lo / z.hi, 4 * root.hi / z.lo)


# -- shard kernels -------------------------------------------------------------


def _member_rows(X: int, a_lo: int, a_hi: int):
    """Yield (A, B values, membership mask) for each A in the shard."""
    amax, bmax = coefficient_bounds(X)
    if amax < 0:
        return
    B = np.arange(-bmax, bmax + 1, dtype=np.int64)
    sixth = [ell for ell in primes_upto(max(2, iroot(bmax, 6))) if ell**6 <= bmax]
    sixth_free = np.ones_like(B, dtype=bool)
    for ell in sixth:
        sixth_free &= B % ell**6 != 0
    for A in range(max(a_lo, -amax), min(a_hi, amax) + 1):
        disc = 4 * A**3 + 27 * B * B
        mask = disc != 0
        if A == 0:
            mask &= sixth_free
        else:
            for ell in factorize(A):
                if A % ell**4 == 0:
                    mask &= B % ell**6 != 0
        yield A, B, mask, disc


def _count_kernel(args) -> tuple[int, ...]:
    X, a_lo, a_hi = args
    return (sum(int(mask.sum()) for _, _, mask, _ in _member_rows(X, a_lo, a_hi)),)


def _density_kernel(args) -> tuple[int, ...]:
    X, a_lo, a_hi, ell = args
    total = bad = 0
    for A, B, mask, disc in _member_rows(X, a_lo, a_hi):
        additive = (A % ell == 0) & (B % ell == 0)
        deep = disc % (ell * ell) == 0
        total += int(mask.sum())
        bad += int((mask & (additive | deep)).sum())
    return total, bad


def _torsion_kernel(args) -> tuple[int, ...]:
    X, a_lo, a_hi = args
    _, bmax = coefficient_bounds(X)
    total = hits = 0
    for A, B, mask, _ in _member_rows(X, a_lo, a_hi):
        root_b = np.zeros_like(mask)
        # x0 is an integer root iff B = -x0^3 - A x0
        reach = math.isqrt(bmax + abs(A)) + 1
        for x0 in range(-reach, reach + 1):
            b = -(x0**3) - A * x0
            if -bmax <= b <= bmax:
                root_b[b + bmax] = True
        total += int(mask.sum())
        hits += int((mask & root_b).sum())
    return total, hits


def _genus_kernel(args) -> tuple[int, ...]:
    X, a_lo, a_hi, p, ext, mode = args
    cap = g0_cap(ext, p)
    total = acc = 0
    for A, B, mask, _ in _member_rows(X, a_lo, a_hi):
        for b in B[mask]:
            acc += genus_bound(CurveParams(A, int(b)), ext, p, mode, cap=cap).total
            total += 1
    return total, acc


def _map_reduce(kernel, X: int, shards: int, extra=()) -> tuple[int, ...]:
    ranges = shard_ranges(X, shards)
    jobs = [(X, lo, hi, *extra) for lo, hi in ranges]
    if not jobs:
        return (0,) * 2
    if shards <= 1 or len(jobs) == 1:
        parts = [kernel(j) for j in jobs]
    else:
        with ProcessPoolExecutor(min(len(jobs), os.cpu_count() or 1)) as pool:
            parts = list(pool.map(kernel, jobs))
    return tuple(sum(col) for col in zip(*parts))


# -- experiments ---------------------------------------------------------------


def count_members(X: int, shards: int = 1) -> int:
    return _map_reduce(_count_kernel, X, shards)[0]


def count_curves(X: int, shards: int = 1) -> ExperimentReport:
    """Exact #E(X) against 4 X^(5/6) / zeta(10)."""
    if X < 1:
        raise ValueError("X must be positive")
    observed = count_members(X, shards)
    predicted = predicted_count(X).outward(9).mid
    return ExperimentReport("count", X, shards, Fraction(observed), predicted)


def bad_not_i1_fraction(ell: int, X: int, shards: int = 1) -> ExperimentReport:
    """Share of E(X) with additive or I_n (n >= 2) reduction at ell."""
    if ell < 5:
        raise ValueError("ell must be a prime >= 5")
    total, bad = _map_reduce(_density_kernel, X, shards, (ell,))
    observed = Fraction(bad, total) if total else Fraction(0)
    return ExperimentReport("density", X, shards, observed, bounds.density_term(ell), f"ell={ell}")


def two_torsion_fraction(X: int, shards: int = 1) -> ExperimentReport:
    """Share of E(X) with a rational 2-torsion point (x^3 + A x + B has an integer root)."""
    total, hits = _map_reduce(_torsion_kernel, X, shards)
    observed = Fraction(hits, total) if total else Fraction(0)
    return ExperimentReport("torsion", X, shards, observed, Fraction(0))


def avg_genus_bound_empirical(
    p: int,
    ext: nf.ExtensionDesc,
    X: int,
    mode: str = "refined",
    shards: int = 1,
    cutoff: int = bounds.DEFAULT_CUTOFF,
) -> ExperimentReport:
    """Mean genus-theory bound over E(X) against the upper end of C_p(K/F)."""
    total, acc = _map_reduce(_genus_kernel, X, shards, (p, ext, mode))
    observed = Fraction(acc, total) if total else Fraction(0)
    c = bounds.c_constant(bounds.BoundRequest(p, ext, cutoff, conjectural=True))
    return ExperimentReport("genus-avg", X, shards, observed, c.outward(9).hi, f"p={p};mode={mode};L={cutoff}")


def default_shards() -> int:
    return max(1, os.cpu_count() or 1)


__all__ = [
    "ExperimentReport",
    "avg_genus_bound_empirical",
    "bad_not_i1_fraction",
    "count_curves",
    "predicted_count",
    "two_torsion_fraction",
    "zeta10",
]
