"""Polynomials over the prime field F_ell and their factorization.

A polynomial is a list of ints, constant term first, with no trailing
zeros; the zero polynomial is ``[]``.
"""

from __future__ import annotations

import random

Poly = list[int]


def trim(a: Poly) -> Poly:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce(f, ell: int) -> Poly:
    return trim([c % ell for c in f])


def deg(a: Poly) -> int:
    return len(a) - 1


def _sub(a: Poly, b: Poly, ell: int) -> Poly:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % ell for i in range(n)]
    return trim(out)


def mul(a: Poly, b: Poly, ell: int) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % ell for c in out])


def divmod_poly(a: Poly, b: Poly, ell: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = deg(b)
    inv = pow(b[-1], -1, ell)
    if len(r) < len(b):
        return [], r
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] * inv % ell
        if c:
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % ell
    return trim(q), trim(r[:db])


def rem(a: Poly, b: Poly, ell: int) -> Poly:
    return divmod_poly(a, b, ell)[1]


def monic(a: Poly, ell: int) -> Poly:
    if not a:
        return []
    inv = pow(a[-1], -1, ell)
    return [c * inv % ell for c in a]


def gcd(a: Poly, b: Poly, ell: int) -> Poly:
    a, b = list(a), list(b)
    while b:
        a, b = b, rem(a, b, ell)
    return monic(a, ell)


def powmod(base: Poly, e: int, m: Poly, ell: int) -> Poly:
    result: Poly = [1]
    base = rem(base, m, ell)
    while e:
        if e & 1:
            result = rem(mul(result, base, ell), m, ell)
        e >>= 1
        if e:
            base = rem(mul(base, base, ell), m, ell)
    return result


def derivative(a: Poly, ell: int) -> Poly:
    return trim([i * a[i] % ell for i in range(1, len(a))])


def is_separable(f, ell: int) -> bool:
    """True when f mod ell has nonzero leading term and no repeated factor."""
    g = reduce(f, ell)
    if deg(g) != deg(list(f)):
        return False
    return deg(gcd(g, derivative(g, ell), ell)) == 0


def _squarefree_decomposition(f: Poly, ell: int) -> list[tuple[Poly, int]]:
    out: list[tuple[Poly, int]] = []
    c = gcd(f, derivative(f, ell), ell)
    w = divmod_poly(f, c, ell)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, ell)
        fac = divmod_poly(w, y, ell)[0]
        if deg(fac) > 0:
            out.append((monic(fac, ell), i))
        w = y
        c = divmod_poly(c, y, ell)[0]
        i += 1
    if deg(c) > 0:
        root = [c[k] for k in range(0, len(c), ell)]
        out += [(g, j * ell) for g, j in _squarefree_decomposition(monic(root, ell), ell)]
    return out


def _distinct_degree(f: Poly, ell: int) -> list[tuple[Poly, int]]:
    """Split squarefree monic f into products of irreducibles of equal degree."""
    out = []
    x = [0, 1]
    h = x
    i = 1
    while deg(f) >= 2 * i:
        h = powmod(h, ell, f, ell)
        g = gcd(f, _sub(h, x, ell), ell)
        if deg(g) > 0:
            out.append((g, i))
            f = divmod_poly(f, g, ell)[0]
            h = rem(h, f, ell)
        i += 1
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _equal_degree(f: Poly, d: int, ell: int, rng: random.Random) -> list[Poly]:
    if deg(f) == d:
        return [f]
    n = deg(f)
    while True:
        a = trim([rng.randrange(ell) for _ in range(n)])
        if deg(a) < 1:
            continue
        if ell == 2:
            t, b = a, a
            for _ in range(d - 1):
                t = rem(mul(t, t, ell), f, ell)
                b = _sub(b, [(-c) % 2 for c in t], ell)
        else:
            b = _sub(powmod(a, (ell**d - 1) // 2, f, ell), [1], ell)
        g = gcd(f, b, ell)
        if 0 < deg(g) < n:
            h = divmod_poly(f, g, ell)[0]
            return _equal_degree(g, d, ell, rng) + _equal_degree(monic(h, ell), d, ell, rng)


def _sort_key(item):
    fac = item[0] if isinstance(item, tuple) else item
    return (deg(fac), tuple(fac))


def poly_factor_mod(f, ell: int) -> list[tuple[Poly, int]]:
    """Factor f over F_ell into monic irreducibles with multiplicities.

    The unit leading coefficient is dropped. Output is sorted by degree,
    then by coefficient tuple (constant term first).
    """
    g = reduce(f, ell)
    if not g or deg(g) != len(trim(list(f))) - 1:
        raise ValueError(f"leading coefficient vanishes mod {ell}")
    g = monic(g, ell)
    if deg(g) == 0:
        return []
    rng = random.Random(ell * 1_000_003 + deg(g))
    out: list[tuple[Poly, int]] = []
    for sqf, mult in _squarefree_decomposition(g, ell):
        for block, d in _distinct_degree(sqf, ell):
            out += [(fac, mult) for fac in _equal_degree(block, d, ell, rng)]
    return sorted(out, key=_sort_key)


def factor_degrees(f, ell: int) -> list[int]:
    """Sorted degrees of the irreducible factors of a separable f mod ell.

    Skips the equal-degree splitting step, so it is the cheap path for
    splitting-type queries.
    """
    g = monic(reduce(f, ell), ell)
    if not is_separable(f, ell):
        raise ValueError(f"polynomial is not separable mod {ell}")
    degs: list[int] = []
    for block, d in _distinct_degree(g, ell):
        degs += [d] * (deg(block) // d)
    return sorted(degs)
