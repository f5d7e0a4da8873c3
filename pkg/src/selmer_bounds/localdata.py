"""Local norm indices and the genus-theory upper bound for a single curve."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from . import numfield as nf
from .arith import factorize
from .curves import Additive, CurveParams, Good, Multiplicative, reduction_type

Mode = Literal["paper", "refined"]
MODES = ("paper", "refined")


@dataclass(frozen=True)
class NormIndexInfo:
    """A cyclic norm-index group E(F_v)/N E(K_w), recorded by its order."""

    group_order: int

    def mod_p_dim(self, p: int) -> int:
        return 1 if self.group_order % p == 0 else 0


def norm_index_split_mult(v_disc: int, n: int) -> NormIndexInfo:
    """Split multiplicative reduction, unramified local extension of degree n."""
    if v_disc < 1 or n < 1:
        raise ValueError("discriminant valuation and local degree must be positive")
    return NormIndexInfo(math.gcd(v_disc, n))


def norm_index_nonsplit_mult(v_disc: int, n: int) -> NormIndexInfo:
    """Non-split multiplicative reduction, unramified local extension of degree n."""
    if v_disc < 1 or n < 1:
        raise ValueError("discriminant valuation and local degree must be positive")
    if n % 2:
        return NormIndexInfo(1)
    return NormIndexInfo(2 if v_disc % 2 == 0 else 1)


@dataclass(frozen=True)
class Place:
    """A place of F, as far as the local caps care.

    kind is one of "above_p", "finite", "real", "complex"; ``local_degree``
    is [F_v : Q_p] and only used above p.
    """

    kind: str
    local_degree: int = 1


def local_cap(place: Place, p: int) -> int:
    """Upper bound on dim E(F_v)/(N E(K_w) + p E(F_v))."""
    if place.kind == "above_p":
        if place.local_degree < 1:
            raise ValueError("local degree must be positive")
        return 2 + place.local_degree
    if place.kind == "finite":
        return 2
    if place.kind == "real":
        return 1 if p == 2 else 0
    if place.kind == "complex":
        return 0
    raise ValueError(f"unknown place kind {place.kind!r}")


def capped_places(F: nf.FieldDesc, support, p: int) -> list[tuple[int | None, Place]]:
    """Places of F above ``support`` plus the archimedean places."""
    out: list[tuple[int | None, Place]] = []
    for ell in sorted(support):
        for d in nf.local_degrees(F, ell):
            out.append((ell, Place("above_p", d) if ell == p else Place("finite")))
    real = nf.r1(F)
    out += [(None, Place("real"))] * real
    out += [(None, Place("complex"))] * ((nf.degree(F) - real) // 2)
    return out


@dataclass
class GenusBoundReport:
    mode: str
    g0_cap: int
    g1_terms: list[tuple[int, int]] = field(default_factory=list)

    @property
    def g1(self) -> int:
        return sum(c for _, c in self.g1_terms)

    @property
    def total(self) -> int:
        return self.g0_cap + self.g1

    def to_record(self) -> str:
        terms = ",".join(f"{ell}:{c}" for ell, c in self.g1_terms) or "-"
        return f"{self.mode}\t{self.g0_cap}\t{self.g1}\t{self.total}\t{terms}"


def g0_cap(ext: nf.ExtensionDesc, p: int) -> int:
    return sum(local_cap(place, p) for _, place in capped_places(ext.base, nf.support_6p(ext, p), p))


def _refined_dim(rt: Multiplicative, ext: nf.ExtensionDesc, ell: int, p: int) -> int:
    if ext.top is None:
        raise ValueError(f"residue degree at {ell} unavailable: K is not described (use mode=paper)")
    n_loc = nf.residue_degree_unramified(ext.top, ext.base, ell, ext.ramified_primes_K)
    # non-split over Q_ell splits over an even-degree unramified F_v
    split = rt.split or nf.residue_degree(ext.base, ell) % 2 == 0
    info = norm_index_split_mult(rt.n, n_loc) if split else norm_index_nonsplit_mult(rt.n, n_loc)
    return info.mod_p_dim(p)


def genus_bound(
    c: CurveParams,
    ext: nf.ExtensionDesc,
    p: int,
    mode: Mode = "refined",
    bad_prime_scan_limit: int | None = None,
    *,
    cap: int | None = None,
) -> GenusBoundReport:
    """Upper bound for the genus theory g_p(K/F; E) of one curve.

    Places above 6p disc(K) and infinity are charged their local caps.
    Every other bad prime ell is charged per prime of F above it: 0 for I_1,
    2 for additive and, for I_n with n >= 2, either 2 (paper mode) or the
    mod-p dimension of the exact norm index (refined mode).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    support = nf.support_6p(ext, p)
    report = GenusBoundReport(mode, g0_cap(ext, p) if cap is None else cap)
    for ell in factorize(c.disc):
        if ell in support:
            continue
        if bad_prime_scan_limit is not None and ell > bad_prime_scan_limit:
            raise ValueError(f"bad prime {ell} exceeds scan limit {bad_prime_scan_limit}")
        rt = reduction_type(c, ell)
        if isinstance(rt, Good):
            continue
        places = nf.primes_above(ext.base, ell)
        if isinstance(rt, Additive):
            per_place = 2
        elif rt.n == 1:
            per_place = 0
        elif mode == "paper":
            per_place = 2
        else:
            per_place = _refined_dim(rt, ext, ell, p)
        report.g1_terms.append((ell, per_place * places))
    return report
