"""Z[G]-lattices given by integer matrices: fixed spaces and H^1(G, L)[p].

A lattice of rank m is a finite matrix group acting on column vectors in
Z^m. Fixed vectors of the group are fixed vectors of the generators, so all
computations below only touch the generators; the full group is built once
to check finiteness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_ORDER_BOUND = 10**4


def _mat(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(m: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def det(a: Matrix) -> int:
    rows = [list(r) for r in a]
    n = len(rows)
    sign, prev = 1, 1
    for k in range(n):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
        prev = rows[k][k]
    return sign * rows[-1][-1]


def group_closure(gens, m: int, order_bound: int = DEFAULT_ORDER_BOUND) -> frozenset[Matrix]:
    """All products of the generators; raises if more than ``order_bound`` appear."""
    one = identity(m)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = matmul(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > order_bound:
                        raise ValueError(f"group generated exceeds order bound {order_bound}")
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class LatticeDesc:
    rank: int
    generators: tuple[Matrix, ...]
    order_bound: int = DEFAULT_ORDER_BOUND

    def __post_init__(self):
        gens = tuple(_mat(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.rank < 1:
            raise ValueError("lattice rank must be positive")
        for g in gens:
            if len(g) != self.rank or any(len(r) != self.rank for r in g):
                raise ValueError(f"generator is not {self.rank}x{self.rank}")
            if det(g) not in (1, -1):
                raise ValueError("generator is not invertible over Z")
        group_closure(gens, self.rank, self.order_bound)

    def group(self) -> frozenset[Matrix]:
        return group_closure(self.generators, self.rank, self.order_bound)


def _stacked(L: LatticeDesc) -> list[list[int]]:
    rows = []
    for g in L.generators:
        for i, r in enumerate(g):
            rows.append([x - (1 if i == j else 0) for j, x in enumerate(r)])
    return rows


def rank_mod_p(rows, p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                c = a[i][col]
                a[i] = [(x - c * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def rank_rational(rows) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, len(a)):
            if a[i][col]:
                c = a[i][col] / a[rank][col]
                a[i] = [x - c * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def fixed_dim_mod_p(L: LatticeDesc, p: int) -> int:
    """dim over F_p of (L/pL)^G."""
    if not L.generators:
        return L.rank
    return L.rank - rank_mod_p(_stacked(L), p)


def rational_fixed_rank(L: LatticeDesc) -> int:
    """Rank of the fixed sublattice L^G."""
    if not L.generators:
        return L.rank
    return L.rank - rank_rational(_stacked(L))


def h1_p_torsion_dim(L: LatticeDesc, p: int) -> int:
    """dim H^1(G, L)[p], from 0 -> L^G/p -> (L/pL)^G -> H^1(G, L)[p] -> 0."""
    return fixed_dim_mod_p(L, p) - rational_fixed_rank(L)


@dataclass(frozen=True)
class HypothesisCheck:
    satisfied: bool
    dim: int

    def label(self) -> str:
        return f"satisfied({self.dim})" if self.satisfied else "violated"


def mw_multiplicity_hypothesis_check(L: LatticeDesc, p: int) -> HypothesisCheck:
    d = fixed_dim_mod_p(L, p)
    return HypothesisCheck(d >= 1, d)


# -- constructions -------------------------------------------------------------


def _check_perm(perm, k: int) -> tuple[int, ...]:
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm} is not a permutation of 0..{k - 1}")
    return perm


def permutation_lattice(perms, k: int | None = None) -> LatticeDesc:
    """The permutation module Z^k, e_j -> e_{perm[j]}."""
    perms = [tuple(p) for p in perms]
    k = len(perms[0]) if k is None else k
    mats = []
    for perm in perms:
        perm = _check_perm(perm, k)
        mats.append(tuple(tuple(1 if perm[j] == i else 0 for j in range(k)) for i in range(k)))
    return LatticeDesc(k, tuple(mats))


def augmentation_lattice(perms, k: int | None = None) -> LatticeDesc:
    """Kernel of the coefficient sum on Z^k, basis e_i - e_0 for i = 1..k-1."""
    perms = [tuple(p) for p in perms]
    k = len(perms[0]) if k is None else k
    if k < 2:
        raise ValueError("augmentation lattice needs at least two points")
    mats = []
    for perm in perms:
        perm = _check_perm(perm, k)
        cols = []
        for i in range(1, k):
            col = [0] * (k - 1)
            # e_i - e_0 -> e_perm(i) - e_perm(0), with e_0 - e_0 = 0
            if perm[i]:
                col[perm[i] - 1] += 1
            if perm[0]:
                col[perm[0] - 1] -= 1
            cols.append(col)
        mats.append(tuple(zip(*cols)))
    return LatticeDesc(k - 1, tuple(mats))


def affine_group_perms(q: int = 5, mult: int = 2) -> list[tuple[int, ...]]:
    """x -> x+1 and x -> mult*x on Z/q: generators of F_q semidirect F_q^x."""
    return [tuple((x + 1) % q for x in range(q)), tuple(mult * x % q for x in range(q))]


# Basis 1, z, z^2, z^3 of Z[z], z a primitive 5th root of unity; columns are images.
_ZETA5_MUL = ((0, 0, 0, -1), (1, 0, 0, -1), (0, 1, 0, -1), (0, 0, 1, -1))
_ZETA5_SQUARE = ((1, 0, -1, 0), (0, 0, -1, 1), (0, 1, -1, 0), (0, 0, -1, 0))
_ONE_PLUS_ZETA5 = ((1, 0, 0, -1), (1, 1, 0, -1), (0, 1, 1, -1), (0, 0, 1, 0))


def cyclotomic5_lattice() -> LatticeDesc:
    """Z[zeta_5] with F_5 acting by zeta and F_5^x by zeta -> zeta^2."""
    return LatticeDesc(4, (_ZETA5_MUL, _ZETA5_SQUARE))


def cyclotomic5_prime_lattice() -> LatticeDesc:
    """The prime ideal (1 - zeta_5) with the same action, basis (1 - zeta) zeta^i.

    Multiplication by zeta commutes with the basis change; the Galois
    generator picks up a factor sigma(1 - zeta)/(1 - zeta) = 1 + zeta.
    """
    return LatticeDesc(4, (_ZETA5_MUL, matmul(_ONE_PLUS_ZETA5, _ZETA5_SQUARE)))
