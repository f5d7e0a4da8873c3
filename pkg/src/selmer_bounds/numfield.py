"""Descriptions of the number fields F and K and their prime splitting.

Four descriptor kinds are supported: the rationals, quadratic fields,
multiquadratic fields (given by squarefree generators) and monogenic fields
(given by a monic defining polynomial, with Dedekind's criterion used at
primes where it applies).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .arith import factor_degrees, factorize, is_separable, is_squarefree, kronecker, prime_iter


class SplittingDataRequired(ValueError):
    """Raised when a prime's decomposition cannot be read off the minpoly."""


class NotGaloisAtPrime(ValueError):
    """Raised when residue degrees above a prime are not uniform."""


def _sqf_product(a: int, b: int) -> int:
    g = math.gcd(a, b)
    return (a // g) * (b // g)


@dataclass(frozen=True)
class Rational:
    kind = "rational"

    def label(self) -> str:
        return "Q"


@dataclass(frozen=True)
class Quadratic:
    d: int
    kind = "quadratic"

    def __post_init__(self):
        if self.d in (0, 1) or not is_squarefree(self.d):
            raise ValueError(f"quadratic generator must be squarefree and not 0 or 1, got {self.d}")

    def label(self) -> str:
        return f"Q(sqrt({self.d}))"


@dataclass(frozen=True)
class Multiquadratic:
    generators: tuple[int, ...]
    kind = "multiquadratic"

    def __post_init__(self):
        gens = tuple(int(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("multiquadratic field needs at least one generator")
        for g in gens:
            if g in (0, 1) or not is_squarefree(g):
                raise ValueError(f"generator {g} is not a squarefree integer other than 0, 1")
        if len(_closure(gens)) != 2 ** len(gens):
            raise ValueError(f"generators {gens} are dependent modulo squares")

    def label(self) -> str:
        return "Q(" + ",".join(f"sqrt({g})" for g in self.generators) + ")"


@dataclass(frozen=True)
class Monogenic:
    """Field Q[x]/(minpoly); ``minpoly`` is listed constant term first.

    ``splitting`` maps a prime to the (e, f) pairs of the primes above it and
    overrides Dedekind factorization; it is required at primes where the
    minpoly is inseparable.
    """

    minpoly: tuple[int, ...]
    discriminant: int | None = None
    ramified: frozenset[int] | None = None
    index_coprime: bool = False
    splitting: Mapping[int, tuple[tuple[int, int], ...]] = field(default_factory=dict)
    kind = "monogenic"

    def __post_init__(self):
        poly = tuple(int(c) for c in self.minpoly)
        object.__setattr__(self, "minpoly", poly)
        if len(poly) < 2 or poly[-1] != 1:
            raise ValueError("minpoly must be monic of degree >= 1")
        if self.ramified is not None:
            object.__setattr__(self, "ramified", frozenset(int(p) for p in self.ramified))
        split = {int(k): tuple((int(e), int(f)) for e, f in v) for k, v in dict(self.splitting).items()}
        for ell, places in split.items():
            if sum(e * f for e, f in places) != len(poly) - 1:
                raise ValueError(f"splitting data at {ell} does not sum to the degree")
        object.__setattr__(self, "splitting", split)

    def __hash__(self):
        return hash((self.minpoly, self.discriminant, self.ramified, self.index_coprime))

    @property
    def irreducibility_verified(self) -> bool:
        return _irreducible_by_patterns(self.minpoly)

    def label(self) -> str:
        return "Q[x]/(" + _poly_str(self.minpoly) + ")"


FieldDesc = Union[Rational, Quadratic, Multiquadratic, Monogenic]


@dataclass(frozen=True)
class ExtensionDesc:
    """A Galois extension K/F; only the prime support of disc(K) is stored."""

    base: FieldDesc
    top: FieldDesc | None
    degree_kf: int
    ramified_primes_K: frozenset[int]
    galois: bool = True

    def __post_init__(self):
        object.__setattr__(self, "ramified_primes_K", frozenset(int(p) for p in self.ramified_primes_K))
        if self.degree_kf < 1:
            raise ValueError("[K:F] must be positive")
        if not self.galois:
            raise ValueError("K/F must be Galois")
        if self.top is not None and degree(self.top) != self.degree_kf * degree(self.base):
            raise ValueError(
                f"[K:Q]={degree(self.top)} is not [K:F]*[F:Q]={self.degree_kf * degree(self.base)}"
            )
        trivial = self.degree_kf == 1 and isinstance(self.base, Rational)
        if not self.ramified_primes_K and not trivial:
            raise ValueError("ramified prime set of K must be nonempty unless K = Q")

    @classmethod
    def from_fields(cls, base: FieldDesc, top: FieldDesc, ramified=None) -> "ExtensionDesc":
        if degree(top) % degree(base):
            raise ValueError("degree of K is not divisible by degree of F")
        ram = ramified_support(top) if ramified is None else frozenset(ramified)
        return cls(base, top, degree(top) // degree(base), ram)

    def label(self) -> str:
        top = self.top.label() if self.top is not None else f"[K:F]={self.degree_kf}"
        return f"K={top};F={self.base.label()};ram={','.join(map(str, sorted(self.ramified_primes_K)))}"


# -- helpers -----------------------------------------------------------------


def _closure(gens) -> list[int]:
    out = [1]
    for g in gens:
        out = sorted(set(out) | {_sqf_product(x, g) for x in out})
    return out


def _poly_str(poly) -> str:
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        coef = str(c) if (c not in (1, -1) or i == 0) else ("-" if c == -1 else "")
        terms.append(f"{coef}{mono}")
    return "+".join(terms).replace("+-", "-")


def _subset_sums(degs: list[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _irreducible_by_patterns(poly, prime_limit: int = 400) -> bool:
    """Prove irreducibility over Q from factorization patterns modulo primes.

    A rational factor of degree k forces k to be a subset sum of the factor
    degrees modulo every good prime; if no 0 < k < n survives, f is irreducible.
    """
    n = len(poly) - 1
    if n == 1:
        return True
    possible = set(range(1, n))
    for ell in prime_iter(2, prime_limit):
        if not is_separable(poly, ell):
            continue
        possible &= _subset_sums(factor_degrees(poly, ell))
        if not possible:
            return True
    return False


def poly_discriminant(poly) -> int:
    """Discriminant of a monic integer polynomial via its Sylvester resultant."""
    f = list(poly)
    n = len(f) - 1
    df = [i * f[i] for i in range(1, len(f))]
    m = n - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + f[::-1] + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + df[::-1] + [0] * (size - m - 1 - i))
    res = _bareiss_det(rows)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res


def _bareiss_det(mat) -> int:
    a = [list(r) for r in mat]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def _quadratic_disc_primes(d: int) -> set[int]:
    primes = set(factorize(d))
    if d % 4 != 1:
        primes.add(2)
    return primes


# -- public operations -------------------------------------------------------


def degree(F: FieldDesc) -> int:
    if isinstance(F, Rational):
        return 1
    if isinstance(F, Quadratic):
        return 2
    if isinstance(F, Multiquadratic):
        return 2 ** len(F.generators)
    return len(F.minpoly) - 1


def qset(F: FieldDesc) -> frozenset[int]:
    """Squarefree D with Q(sqrt(D)) contained in F (1 included)."""
    if isinstance(F, Rational):
        return frozenset({1})
    if isinstance(F, Quadratic):
        return frozenset({1, F.d})
    if isinstance(F, Multiquadratic):
        return frozenset(_closure(F.generators))
    raise ValueError("qset undefined for this descriptor")


def _sturm_real_roots(poly) -> int:
    p0 = [Fraction(c) for c in poly]
    p1 = [i * p0[i] for i in range(1, len(p0))]
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = list(a)
        while len(r) >= len(b):
            c = r[-1] / b[-1]
            shift = len(r) - len(b)
            for j, bj in enumerate(b):
                r[shift + j] -= c * bj
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        if not r:
            break
        chain.append([-c for c in r])

    def variations(at_plus: bool) -> int:
        signs = []
        for q in chain:
            lead = q[-1]
            s = 1 if lead > 0 else -1
            if not at_plus and (len(q) - 1) % 2:
                s = -s
            signs.append(s)
        return sum(1 for x, y in zip(signs, signs[1:]) if x != y)

    return variations(False) - variations(True)


def r1(F: FieldDesc) -> int:
    """Number of real embeddings."""
    if isinstance(F, Rational):
        return 1
    if isinstance(F, Quadratic):
        return 2 if F.d > 0 else 0
    if isinstance(F, Multiquadratic):
        return degree(F) if all(d > 0 for d in qset(F)) else 0
    return _sturm_real_roots(F.minpoly)


def ramified_support(F: FieldDesc) -> frozenset[int]:
    """Rational primes ramified in F (primes dividing disc(F))."""
    if isinstance(F, Rational):
        return frozenset()
    if isinstance(F, Quadratic):
        return frozenset(_quadratic_disc_primes(F.d))
    if isinstance(F, Multiquadratic):
        return frozenset(set().union(*(_quadratic_disc_primes(g) for g in F.generators)))
    if F.ramified is not None:
        return F.ramified
    if F.discriminant is not None:
        return frozenset(factorize(F.discriminant))
    if F.index_coprime:
        return frozenset(factorize(poly_discriminant(F.minpoly)))
    raise SplittingDataRequired("ramified primes of a monogenic field need ramified, discriminant or index_coprime")


def _mq_decomposition(F: FieldDesc, ell: int) -> tuple[int, int, int]:
    """(e, f, g) at ell for a quadratic or multiquadratic field."""
    Q = qset(F)
    if ell == 2:
        unram = [D for D in Q if D % 4 == 1]
    else:
        unram = [D for D in Q if D % ell]
    f = 1 if all(kronecker(D, ell) == 1 for D in unram) else 2
    return len(Q) // len(unram), f, len(unram) // f


def decomposition(F: FieldDesc, ell: int) -> list[tuple[int, int]]:
    """The (e, f) pair of each prime of F above the rational prime ell."""
    if isinstance(F, Rational):
        return [(1, 1)]
    if isinstance(F, (Quadratic, Multiquadratic)):
        e, f, g = _mq_decomposition(F, ell)
        return [(e, f)] * g
    if ell in F.splitting:
        return list(F.splitting[ell])
    ram = F.ramified
    if (ram is None or ell not in ram) and is_separable(F.minpoly, ell):
        return [(1, d) for d in factor_degrees(F.minpoly, ell)]
    raise SplittingDataRequired(f"splitting data required at {ell} for {F.label()}")


def primes_above(F: FieldDesc, ell: int) -> int:
    if isinstance(F, Rational):
        return 1
    if isinstance(F, (Quadratic, Multiquadratic)):
        return _mq_decomposition(F, ell)[2]
    return len(decomposition(F, ell))


def local_degrees(F: FieldDesc, ell: int) -> list[int]:
    """[F_v : Q_ell] for each place v of F above ell."""
    return [e * f for e, f in decomposition(F, ell)]


def omega(F: FieldDesc, n: int) -> int:
    """Number of prime ideals of F dividing n."""
    if n == 0:
        raise ValueError("omega(0) is undefined")
    return sum(primes_above(F, ell) for ell in factorize(n))


def residue_degree(F: FieldDesc, ell: int) -> int:
    """Common residue degree of the primes of F above an unramified ell."""
    places = decomposition(F, ell)
    if any(e != 1 for e, _ in places):
        raise ValueError(f"{ell} is ramified in {F.label()}")
    degs = {f for _, f in places}
    if len(degs) != 1:
        raise NotGaloisAtPrime(f"extension not Galois at {ell}: residue degrees {sorted(degs)}")
    return degs.pop()


def residue_degree_unramified(K: FieldDesc, F: FieldDesc, ell: int, ramified_K=None) -> int:
    """Degree of the unramified local extension K_w/F_v above ell."""
    ram = ramified_support(K) if ramified_K is None else ramified_K
    if ell in ram:
        raise ValueError(f"{ell} ramifies in K")
    fk, ff = residue_degree(K, ell), residue_degree(F, ell)
    if fk % ff:
        raise NotGaloisAtPrime(f"residue degree of F ({ff}) does not divide that of K ({fk}) at {ell}")
    return fk // ff


def support_6p(ext: ExtensionDesc, p: int) -> frozenset[int]:
    """Prime support of 6 * p * disc(K)."""
    return frozenset({2, 3, p}) | ext.ramified_primes_K


def omega_support(F: FieldDesc, primes) -> int:
    return sum(primes_above(F, ell) for ell in primes)


def field_from_quadratic_gens(gens) -> FieldDesc:
    gens = list(gens)
    if not gens:
        return Rational()
    if len(gens) == 1:
        return Quadratic(gens[0])
    return Multiquadratic(tuple(gens))


__all__ = [
    "ExtensionDesc",
    "FieldDesc",
    "Monogenic",
    "Multiquadratic",
    "NotGaloisAtPrime",
    "Quadratic",
    "Rational",
    "SplittingDataRequired",
    "decomposition",
    "degree",
    "local_degrees",
    "omega",
    "poly_discriminant",
    "primes_above",
    "qset",
    "r1",
    "ramified_support",
    "residue_degree",
    "residue_degree_unramified",
    "support_6p",
]
