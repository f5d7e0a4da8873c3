"""Rigorous evaluation of C_p(K/F) and the average-bound composers.

Every bound is returned as a closed interval with rational endpoints. The
infinite prime sum inside C_p is split into an exactly enclosed finite part
(primes up to the cutoff L) and an explicit tail bound.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import numfield as nf
from .arith import factorize, prime_iter

KNOWN_PRIMES = (2, 3, 5)
DEFAULT_CUTOFF = 10**6

# Fixed-point scale for the directed rounding of the finite prime sum.
_SCALE_BITS = 256
_SQRT3_DIGITS = 15


@dataclass(frozen=True)
class BoundInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "BoundInterval":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other: "BoundInterval") -> "BoundInterval":
        return BoundInterval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, k) -> "BoundInterval":
        k = Fraction(k)
        if k < 0:
            raise ValueError("only nonnegative scaling keeps endpoint order")
        return BoundInterval(self.lo * k, self.hi * k)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def outward(self, digits: int = 12) -> "BoundInterval":
        """Enclosing interval with denominators 10**digits."""
        s = 10**digits
        return BoundInterval(Fraction(math.floor(self.lo * s), s), Fraction(math.ceil(self.hi * s), s))


@dataclass(frozen=True)
class BoundRequest:
    p: int
    ext: nf.ExtensionDesc
    cutoff: int = DEFAULT_CUTOFF
    conjectural: bool = False

    def __post_init__(self):
        if self.p < 2 or factorize(self.p) != {self.p: 1}:
            raise ValueError(f"p must be prime, got {self.p}")
        if self.cutoff < 10:
            raise ValueError("cutoff L must be at least 10")

    def require_known_prime(self):
        if self.p not in KNOWN_PRIMES and not self.conjectural:
            raise ValueError(
                f"p={self.p} is only covered conditionally; pass conjectural=True to allow it"
            )


@dataclass(frozen=True)
class BoundResult:
    """A bound with the inputs that produced it."""

    name: str
    interval: BoundInterval
    p: int
    fields: str
    cutoff: int | None
    conjectural: bool
    notes: tuple[str, ...] = field(default=())


def density_term(ell: int) -> Fraction:
    """Density of curves with bad reduction other than I_1 at ell."""
    return Fraction(2 * ell**8 - ell**7 - 1, ell**10 - 1)


def _sqrt3() -> BoundInterval:
    scale = 10**_SQRT3_DIGITS
    r = math.isqrt(3 * scale * scale)
    return BoundInterval(Fraction(r, scale), Fraction(r + 1, scale))


def three_to_5_2() -> BoundInterval:
    """Enclosure of 3^(5/2) = 9*sqrt(3)."""
    return _sqrt3().scale(9)


def three_to_7_2() -> BoundInterval:
    """Enclosure of 3^(7/2) = 27*sqrt(3)."""
    return _sqrt3().scale(27)


def _partial_sum(args) -> tuple[int, int]:
    F, excluded, a, b = args
    num_lo = num_hi = 0
    for ell in prime_iter(a, b):
        if ell in excluded:
            continue
        w = nf.primes_above(F, ell)
        top = (2 * ell**8 - ell**7 - 1) << _SCALE_BITS
        den = ell**10 - 1
        q, r = divmod(top, den)
        num_lo += w * q
        num_hi += w * (q + (1 if r else 0))
    return num_lo, num_hi


def prime_sum(F: nf.FieldDesc, excluded, cutoff: int, workers: int = 1) -> BoundInterval:
    """Enclosure of sum over primes ell <= cutoff, ell not excluded, of omega_F(ell) * density."""
    excluded = frozenset(excluded)
    if workers <= 1 or cutoff < 100_000:
        lo, hi = _partial_sum((F, excluded, 2, cutoff))
    else:
        step = -(-cutoff // (4 * workers))
        chunks = [(F, excluded, a, min(a + step - 1, cutoff)) for a in range(2, cutoff + 1, step)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_partial_sum, chunks))
        lo, hi = sum(x for x, _ in parts), sum(y for _, y in parts)
    return BoundInterval(Fraction(lo, 1 << _SCALE_BITS), Fraction(hi, 1 << _SCALE_BITS))


def tail_bound(degree: int, cutoff: int) -> Fraction:
    """Upper bound for 2 * sum over primes ell > cutoff of omega_F(ell) * density.

    Uses omega_F <= [F:Q], density < 2/ell^2, primes > 3 lying in the classes
    +-1 mod 6, and 1/n^2 <= (1/6) * integral of x^-2 over [n-3, n+3].
    """
    return Fraction(4 * degree, 3 * (cutoff - 3))


def c_constant(req: BoundRequest, workers: int = 1) -> BoundInterval:
    """Enclosure of C_p(K/F); valid for every prime p."""
    F = req.ext.base
    support = nf.support_6p(req.ext, req.p)
    d = nf.degree(F)
    finite = 2 * nf.omega_support(F, support) + d + (nf.r1(F) if req.p == 2 else 0)
    s = prime_sum(F, support, req.cutoff, workers)
    return BoundInterval(finite + 2 * s.lo, finite + 2 * s.hi + tail_bound(d, req.cutoff))


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def rational_selmer_avg(p: int) -> BoundInterval:
    """Average dimension bound for Sel_p over Q, (p+1)/p scaled by the ordering factor."""
    return three_to_5_2().scale(Fraction(p + 1, p))


def multiquadratic_goodchar_avg(p: int, F: nf.FieldDesc) -> BoundInterval:
    """Average dim Sel_p(E/F) bound for odd p and F rational or multiquadratic."""
    if p == 2:
        raise ValueError("p = 2 is handled by the 2-extension composer")
    if isinstance(F, nf.Monogenic):
        raise ValueError("F must be rational or multiquadratic")
    weight = sum(abs(D) ** 5 for D in nf.qset(F))
    return rational_selmer_avg(p).scale(weight)


def fixed_space_avg_bound(req: BoundRequest, workers: int = 1) -> BoundResult:
    """Average dim Sel_p(E/K)^G bound for K/Q Galois."""
    req.require_known_prime()
    if not isinstance(req.ext.base, nf.Rational):
        raise ValueError("fixed-space bound is stated for K/Q (base field must be rational)")
    base = rational_selmer_avg(req.p)
    label = req.ext.label()
    if req.ext.degree_kf % req.p:
        note = f"p={req.p} does not divide [K:Q]={req.ext.degree_kf}: descent is exact, bound is the Q-average"
        return BoundResult("fixed-space", base, req.p, label, None, req.conjectural, (note,))
    c = c_constant(req, workers)
    return BoundResult("fixed-space", c + base, req.p, label, req.cutoff, req.conjectural)


def descent_failure_avg_bound(req: BoundRequest, workers: int = 1) -> BoundResult:
    return BoundResult(
        "descent", c_constant(req, workers), req.p, req.ext.label(), req.cutoff, req.conjectural
    )


def p_extension_selmer_avg_bound(req: BoundRequest, avg_F: BoundInterval, workers: int = 1) -> BoundInterval:
    """[K:F] * (C_p(K/F) + avg_F) for a Galois p-extension K/F."""
    if not _is_power_of(req.ext.degree_kf, req.p):
        raise ValueError(f"[K:F]={req.ext.degree_kf} is not a power of p={req.p}")
    return (c_constant(req, workers) + avg_F).scale(req.ext.degree_kf)


def _over_q(F: nf.FieldDesc) -> nf.ExtensionDesc:
    return nf.ExtensionDesc(nf.Rational(), F, nf.degree(F), nf.ramified_support(F))


def base_selmer_avg(p: int, F: nf.FieldDesc) -> BoundInterval:
    """Known average bound for dim Sel_p over F (odd p, or p = 2 with F = Q)."""
    if isinstance(F, nf.Rational):
        return rational_selmer_avg(p)
    return multiquadratic_goodchar_avg(p, F)


def _two_over_multiquadratic(req: BoundRequest, workers: int) -> BoundInterval:
    F = req.ext.base
    inner = BoundRequest(2, _over_q(F), req.cutoff, req.conjectural)
    return c_constant(inner, workers) + three_to_7_2().scale(Fraction(1, 2))


def selmer_avg_bound(req: BoundRequest, workers: int = 1, name: str = "selmer") -> BoundResult:
    """Average dim Sel_p(E/K) bound for a Galois p-extension of Q or of a multiquadratic field."""
    req.require_known_prime()
    F, kf = req.ext.base, req.ext.degree_kf
    if isinstance(F, nf.Monogenic):
        raise ValueError("base field must be rational or multiquadratic")
    if req.p == 2 and not isinstance(F, nf.Rational):
        if not _is_power_of(kf, 2):
            raise ValueError(f"[K:F]={kf} is not a power of 2")
        total = c_constant(req, workers).scale(kf) + _two_over_multiquadratic(req, workers).scale(kf * nf.degree(F))
    else:
        total = p_extension_selmer_avg_bound(req, base_selmer_avg(req.p, F), workers)
    return BoundResult(name, total, req.p, req.ext.label(), req.cutoff, req.conjectural)


def rank_avg_bound(req: BoundRequest, workers: int = 1) -> BoundResult:
    """Average rank of E(K); E(K)/pE(K) embeds in Sel_p so the Selmer bound applies."""
    return selmer_avg_bound(req, workers, name="rank")


def mw_multiplicity_avg_bound(req: BoundRequest, dim_fixed: int, avg_F: BoundInterval, workers: int = 1) -> BoundInterval:
    """(C_p(K/F) + avg_F) / dim (Lambda/p Lambda)^G."""
    if dim_fixed < 1:
        raise ValueError("hypothesis dim(Λ/pΛ)^G ≥ 1 violated")
    return (c_constant(req, workers) + avg_F).scale(Fraction(1, dim_fixed))


def mw_bound(req: BoundRequest, dim_fixed: int, workers: int = 1) -> BoundResult:
    """Average multiplicity bound for a lattice with the given mod-p fixed dimension."""
    req.require_known_prime()
    F = req.ext.base
    if isinstance(F, nf.Monogenic):
        raise ValueError("base field must be rational or multiquadratic")
    if req.p == 2 and not isinstance(F, nf.Rational):
        avg = _two_over_multiquadratic(req, workers).scale(nf.degree(F))
    else:
        avg = base_selmer_avg(req.p, F)
    value = mw_multiplicity_avg_bound(req, dim_fixed, avg, workers)
    return BoundResult("mw", value, req.p, req.ext.label(), req.cutoff, req.conjectural)
