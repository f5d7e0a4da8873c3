import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from selmer_bounds.arith import kronecker
from selmer_bounds.curves import (
    Additive,
    CurveParams,
    Good,
    Multiplicative,
    coefficient_bounds,
    enumerate_curves,
    format_curves,
    height,
    is_member,
    quadratic_twist,
    reduction_type,
    shard_ranges,
)


def brute_members(X):
    out = []
    for A in range(-X, X + 1):
        if abs(A) ** 3 > X:
            continue
        for B in range(-X, X + 1):
            if B * B > X or 4 * A**3 + 27 * B * B == 0:
                continue
            g = math.gcd(A, B)
            if g and any(A % q**4 == 0 and B % q**6 == 0 for q in sympy.primefactors(g)):
                continue
            out.append((A, B))
    return out


def count_points(c, ell):
    """Affine solutions of y^2 = x^3 + Ax + B over F_ell plus the point at infinity."""
    squares = [0] * ell
    for y in range(ell):
        squares[y * y % ell] += 1
    return 1 + sum(squares[(x**3 + c.A * x + c.B) % ell] for x in range(ell))


@pytest.mark.parametrize("A, B, expected", [(1, 1, True), (16, 64, False), (4, 8, True), (0, 0, False), (-3, 2, False), (0, 64, False), (0, 32, True)])
def test_is_member(A, B, expected):
    assert is_member(A, B) is expected


def test_curve_params_rejects_non_members():
    with pytest.raises(ValueError):
        CurveParams(16, 64)


@pytest.mark.parametrize("A, B, h", [(1, 1, 1), (2, 3, 9), (-3, 1, 27)])
def test_height(A, B, h):
    assert height(CurveParams(A, B)) == h


def test_enumerate_small():
    assert list(enumerate_curves(0)) == []
    curves = list(enumerate_curves(1))
    assert len(curves) == 8
    assert (0, 0) not in [(c.A, c.B) for c in curves]
    assert curves == sorted(curves)


@pytest.mark.parametrize("X", [1, 7, 64, 729, 4096])
def test_enumerate_matches_brute_force(X):
    assert [(c.A, c.B) for c in enumerate_curves(X)] == brute_members(X)


@given(st.integers(1, 20_000), st.integers(1, 9))
def test_shards_cover_the_range(X, shards):
    amax, _ = coefficient_bounds(X)
    ranges = shard_ranges(X, shards)
    assert len(ranges) <= shards
    covered = [a for lo, hi in ranges for a in range(lo, hi + 1)]
    assert covered == list(range(-amax, amax + 1))


@pytest.mark.parametrize("shards", [1, 2, 3, 7])
def test_sharded_enumeration_equals_unsharded(shards):
    X = 5000
    whole = list(enumerate_curves(X))
    parts = [c for r in shard_ranges(X, shards) for c in enumerate_curves(X, r)]
    assert parts == whole


def test_reduction_examples():
    assert reduction_type(CurveParams(1, 1), 5) == Good()
    assert reduction_type(CurveParams(5, 5), 5) == Additive()
    assert reduction_type(CurveParams(1, 1), 31) == Multiplicative(1, False)
    with pytest.raises(ValueError, match="only valid for"):
        reduction_type(CurveParams(1, 1), 3)


def test_reduction_invariants_and_split_criterion_on_family():
    for c in enumerate_curves(10**4):
        for ell in (5, 7, 11, 13):
            rt = reduction_type(c, ell)
            if isinstance(rt, Additive):
                assert c.A % ell == 0 and c.B % ell == 0
            elif isinstance(rt, Multiplicative):
                assert c.A * c.B % ell
                assert rt.split == (kronecker(-2 * c.A * c.B, ell) == 1)


@pytest.mark.parametrize("ell", [5, 7, 11, 13, 17])
def test_reduction_type_against_point_counts(ell):
    """a_ell is 1 for split, -1 for non-split multiplicative and 0 for additive reduction."""
    seen = set()
    for c in enumerate_curves(3000):
        rt = reduction_type(c, ell)
        if isinstance(rt, Good):
            continue
        a = ell + 1 - count_points(c, ell)
        if isinstance(rt, Additive):
            assert a == 0
        else:
            assert a == (1 if rt.split else -1)
        seen.add(rt.label()[:2] if not isinstance(rt, Additive) else "add")
    assert "I1" in seen


def test_twist_examples():
    c = CurveParams(1, 1)
    assert quadratic_twist(c, 1) == c
    assert quadratic_twist(c, 2) == CurveParams(4, 8)
    assert quadratic_twist(CurveParams(4, 8), 2) == c
    with pytest.raises(ValueError):
        quadratic_twist(c, 4)
    with pytest.raises(ValueError):
        quadratic_twist(c, 0)


@pytest.mark.parametrize("D", [-1, 2, -2, 3, -3, 5])
def test_twist_involution_on_small_family(D):
    for c in enumerate_curves(100):
        t = quadratic_twist(c, D)
        assert is_member(t.A, t.B)
        assert quadratic_twist(t, D) == c


@given(st.integers(-10**4, 10**4), st.integers(-10**6, 10**6), st.sampled_from([-15, -7, -1, 2, 6, 11, 30]))
def test_twist_is_a_rescaling_of_the_naive_model(A, B, D):
    if not is_member(A, B):
        return
    t = quadratic_twist(CurveParams(A, B), D)
    divisors = sympy.divisors(abs(D))
    assert any(D * D * A == u**4 * t.A and D**3 * B == u**6 * t.B for u in divisors)


def test_format_curves():
    assert list(format_curves([CurveParams(1, -1), CurveParams(0, 1)])) == ["1\t-1", "0\t1"]
