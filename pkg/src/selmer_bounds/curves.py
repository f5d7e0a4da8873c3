"""The family of short Weierstrass curves y^2 = x^3 + A x + B.

A pair (A, B) belongs to the family when 4A^3 + 27B^2 != 0 and no prime
ell has ell^4 | A and ell^6 | B. Such a model is minimal at every ell >= 5,
so the discriminant valuation there is that of 4A^3 + 27B^2.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Union

from .arith import factorize, iroot, is_squarefree, kronecker, valuation


@dataclass(frozen=True, order=True)
class CurveParams:
    A: int
    B: int

    def __post_init__(self):
        if not is_member(self.A, self.B):
            raise ValueError(f"({self.A}, {self.B}) is not in the curve family")

    @property
    def disc(self) -> int:
        return 4 * self.A**3 + 27 * self.B**2


@dataclass(frozen=True)
class Good:
    def label(self) -> str:
        return "good"


@dataclass(frozen=True)
class Multiplicative:
    n: int
    split: bool

    def label(self) -> str:
        return f"I{self.n}{'s' if self.split else 'ns'}"


@dataclass(frozen=True)
class Additive:
    def label(self) -> str:
        return "additive"


ReductionType = Union[Good, Multiplicative, Additive]


def _twelfth_power_free(A: int, B: int) -> bool:
    g = math.gcd(A, B)
    if g in (0, 1):
        return True
    return not any(A % ell**4 == 0 and B % ell**6 == 0 for ell in factorize(g))


def is_member(A: int, B: int) -> bool:
    return 4 * A**3 + 27 * B**2 != 0 and _twelfth_power_free(A, B)


def height(c: CurveParams) -> int:
    return max(abs(c.A) ** 3, c.B**2)


def coefficient_bounds(X: int) -> tuple[int, int]:
    """Largest |A| and |B| allowed at height X."""
    if X < 1:
        return -1, -1
    return iroot(X, 3), math.isqrt(X)


def shard_ranges(X: int, shards: int) -> list[tuple[int, int]]:
    """Split the A-range at height X into at most ``shards`` contiguous pieces."""
    amax, _ = coefficient_bounds(X)
    if amax < 0:
        return []
    values = 2 * amax + 1
    shards = max(1, min(shards, values))
    step, extra = divmod(values, shards)
    out, lo = [], -amax
    for i in range(shards):
        hi = lo + step + (1 if i < extra else 0) - 1
        out.append((lo, hi))
        lo = hi + 1
    return out


def enumerate_curves(X: int, a_range: tuple[int, int] | None = None) -> Iterator[CurveParams]:
    """Members of height <= X, ordered by A then B.

    ``a_range`` restricts A to an inclusive interval (one shard).
    """
    amax, bmax = coefficient_bounds(X)
    if amax < 0:
        return
    lo, hi = (-amax, amax) if a_range is None else (max(-amax, a_range[0]), min(amax, a_range[1]))
    for A in range(lo, hi + 1):
        for B in range(-bmax, bmax + 1):
            if is_member(A, B):
                yield CurveParams(A, B)


def reduction_type(c: CurveParams, ell: int) -> ReductionType:
    """Reduction type of E_{A,B} over Q_ell for a prime ell >= 5."""
    if ell < 5:
        raise ValueError("reduction classification only valid for ℓ ≥ 5")
    d = c.disc
    if d % ell:
        return Good()
    if c.A % ell == 0 and c.B % ell == 0:
        return Additive()
    return Multiplicative(valuation(d, ell), kronecker(6 * c.B, ell) == 1)


def quadratic_twist(c: CurveParams, D: int) -> CurveParams:
    """The twist y^2 = x^3 + D^2 A x + D^3 B, rescaled back into the family."""
    if D == 0 or not is_squarefree(D):
        raise ValueError(f"twist parameter must be a nonzero squarefree integer, got {D}")
    A, B = D * D * c.A, D**3 * c.B
    g = math.gcd(A, B)
    if g > 1:
        for ell in factorize(g):
            while A % ell**4 == 0 and B % ell**6 == 0:
                A //= ell**4
                B //= ell**6
    return CurveParams(A, B)


def format_curves(curves) -> Iterator[str]:
    for c in curves:
        yield f"{c.A}\t{c.B}"
