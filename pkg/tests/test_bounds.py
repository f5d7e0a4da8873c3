from fractions import Fraction

import numpy as np
import pytest
import sympy

from selmer_bounds import bounds as bd
from selmer_bounds import numfield as nf

S3 = nf.ExtensionDesc(nf.Rational(), nf.Monogenic((108, 0, 0, 0, 0, 0, 1), ramified=frozenset({2, 3})), 6, {2, 3})
TRIVIAL = nf.ExtensionDesc(nf.Rational(), None, 1, set())
EISENSTEIN = nf.Quadratic(-3)
BIQUAD = nf.Multiquadratic((2, 3))


def pure_cubic(ell):
    return nf.ExtensionDesc(EISENSTEIN, None, 3, {3, ell})


def float_prime_sum(F, excluded, cutoff):
    primes = np.array(list(sympy.primerange(2, cutoff + 1)), dtype=np.float64)
    weights = np.array([0 if int(q) in excluded else nf.primes_above(F, int(q)) for q in primes])
    dens = (2 * primes**8 - primes**7 - 1) / (primes**10 - 1)
    return float(np.sum(weights * dens))


def test_density_term():
    assert bd.density_term(5) == Fraction(703124, 9765624)
    assert bd.density_term(7) == Fraction(10706058, 282475248)
    for ell in sympy.primerange(2, 10**4):
        assert bd.density_term(ell) < Fraction(2, ell * ell)


@pytest.mark.parametrize("make, square", [(bd.three_to_5_2, 243), (bd.three_to_7_2, 2187)])
def test_power_of_three_enclosures(make, square):
    iv = make()
    assert iv.lo**2 <= square <= iv.hi**2
    assert iv.width <= Fraction(1, 10**9)


def test_interval_basics():
    a = bd.BoundInterval(1, 2)
    assert (a + bd.BoundInterval.point(Fraction(1, 2))) == bd.BoundInterval(Fraction(3, 2), Fraction(5, 2))
    assert a.scale(3) == bd.BoundInterval(3, 6)
    assert a.contains(Fraction(3, 2)) and not a.contains(3)
    with pytest.raises(ValueError):
        bd.BoundInterval(2, 1)
    with pytest.raises(ValueError):
        a.scale(-1)
    out = bd.BoundInterval(Fraction(1, 3), Fraction(2, 3)).outward(3)
    assert out == bd.BoundInterval(Fraction(333, 1000), Fraction(667, 1000))


def test_request_validation():
    with pytest.raises(ValueError):
        bd.BoundRequest(4, S3)
    with pytest.raises(ValueError):
        bd.BoundRequest(2, S3, cutoff=9)
    with pytest.raises(ValueError, match="conjectural"):
        bd.fixed_space_avg_bound(bd.BoundRequest(7, S3, cutoff=1000))
    assert bd.fixed_space_avg_bound(bd.BoundRequest(7, S3, cutoff=1000, conjectural=True)).conjectural


def test_tail_bound_dominates_true_tail():
    far = 10**6
    for d, F in ((1, nf.Rational()), (2, EISENSTEIN), (4, BIQUAD)):
        for L in (10, 100, 1000):
            between = float_prime_sum(F, set(), far) - float_prime_sum(F, set(), L)
            rest = 2 * d / far  # density < 2/ell^2 and sum_{n > far} 1/n^2 < 1/far
            assert 2 * between + rest <= bd.tail_bound(d, L)


def test_c2_s3_field():
    iv = bd.c_constant(bd.BoundRequest(2, S3))
    assert iv.width <= Fraction(5, 10**6)
    assert iv.lo <= Fraction(6339, 1000) + Fraction(5, 10**4) and iv.hi >= Fraction(6339, 1000) - Fraction(5, 10**4)
    approx = 4 + 1 + 1 + 2 * float_prime_sum(nf.Rational(), {2, 3}, 10**6)
    assert float(iv.lo) - 1e-9 <= approx <= float(iv.hi)


def test_c_constant_width_and_halving():
    for ext, p in ((S3, 2), (pure_cubic(11), 3)):
        d = nf.degree(ext.base)
        prev = None
        for L in (1000, 2000, 4000, 8000):
            w = bd.c_constant(bd.BoundRequest(p, ext, L)).width
            assert w <= Fraction(2 * d, L)
            if prev is not None:
                assert w <= prev / 2
            prev = w


def test_trivial_extension_coincides_with_s3():
    for p in (2, 3):
        a = bd.c_constant(bd.BoundRequest(p, S3, 10**4))
        b = bd.c_constant(bd.BoundRequest(p, TRIVIAL, 10**4))
        assert a == b
    assert abs(float(bd.c_constant(bd.BoundRequest(3, S3, 10**4)).mid) - 5.339) < 1e-3


@pytest.mark.parametrize("ell", [7, 13, 101])
def test_enlarging_ramified_set_shifts_by_the_exact_delta(ell):
    base = nf.ExtensionDesc(EISENSTEIN, None, 3, {3, 11})
    more = nf.ExtensionDesc(EISENSTEIN, None, 3, {3, 11, ell})
    a = bd.c_constant(bd.BoundRequest(3, base, 10**4))
    b = bd.c_constant(bd.BoundRequest(3, more, 10**4))
    w = nf.primes_above(EISENSTEIN, ell)
    delta = 2 * w - 2 * w * bd.density_term(ell)
    slack = Fraction(4 * w, 2**256)
    assert abs((b.lo - a.lo) - delta) <= slack
    assert abs((b.hi - a.hi) - delta) <= slack


def test_parallel_prime_sum_is_identical():
    one = bd.prime_sum(EISENSTEIN, {2, 3, 11}, 200_000, workers=1)
    many = bd.prime_sum(EISENSTEIN, {2, 3, 11}, 200_000, workers=3)
    assert one == many


def test_fixed_space_examples():
    r2 = bd.fixed_space_avg_bound(bd.BoundRequest(2, S3))
    assert Fraction(2970, 100) <= r2.interval.lo and r2.interval.hi < Fraction(29722, 1000)
    r3 = bd.fixed_space_avg_bound(bd.BoundRequest(3, S3, 10**4))
    assert abs(float(r3.interval.mid) - 26.12) < 0.01
    r5 = bd.fixed_space_avg_bound(bd.BoundRequest(5, S3, 10**4))
    assert r5.notes and r5.cutoff is None
    assert r5.interval == bd.three_to_5_2().scale(Fraction(6, 5))
    with pytest.raises(ValueError):
        bd.fixed_space_avg_bound(bd.BoundRequest(3, pure_cubic(11), 1000))


def test_fixed_space_is_c_plus_base():
    req = bd.BoundRequest(3, S3, 5000)
    res = bd.fixed_space_avg_bound(req)
    assert res.interval == bd.c_constant(req) + bd.rational_selmer_avg(3)


@pytest.mark.parametrize(
    "p, F, approx, rel",
    [(3, nf.Rational(), 20.78, 1e-3), (3, EISENSTEIN, 5071.6, 1e-4), (5, nf.Quadratic(-10), 1.8707e6, 1e-4)],
)
def test_multiquadratic_goodchar_avg(p, F, approx, rel):
    iv = bd.multiquadratic_goodchar_avg(p, F)
    assert abs(float(iv.mid) - approx) <= rel * approx
    weight = sum(abs(D) ** 5 for D in nf.qset(F))
    assert iv == bd.three_to_5_2().scale(Fraction(p + 1, p) * weight)


def test_multiquadratic_goodchar_avg_errors():
    with pytest.raises(ValueError):
        bd.multiquadratic_goodchar_avg(2, EISENSTEIN)
    with pytest.raises(ValueError):
        bd.multiquadratic_goodchar_avg(3, S3.top)


def test_p_extension_composer():
    req = bd.BoundRequest(3, pure_cubic(11), 5000)
    zero = bd.BoundInterval.point(0)
    assert bd.p_extension_selmer_avg_bound(req, zero) == bd.c_constant(req).scale(3)
    avg = bd.multiquadratic_goodchar_avg(3, EISENSTEIN)
    full = bd.selmer_avg_bound(req)
    assert full.interval == (bd.c_constant(req) + avg).scale(3)
    assert abs(float(full.interval.mid) - 3 * (8.433 + 5071.6)) < 1
    with pytest.raises(ValueError, match="power"):
        bd.p_extension_selmer_avg_bound(bd.BoundRequest(2, pure_cubic(11), 1000), zero)


def test_two_extension_over_multiquadratic():
    K = nf.Multiquadratic((2, 3, 5))
    ext = nf.ExtensionDesc.from_fields(BIQUAD, K)
    req = bd.BoundRequest(2, ext, 2000)
    res = bd.selmer_avg_bound(req)
    over_q = nf.ExtensionDesc.from_fields(nf.Rational(), BIQUAD)
    c_F = bd.c_constant(bd.BoundRequest(2, over_q, 2000))
    expected = bd.c_constant(req).scale(2) + (c_F + bd.three_to_7_2().scale(Fraction(1, 2))).scale(8)
    assert res.interval == expected
    assert bd.rank_avg_bound(req).interval == expected
    assert bd.rank_avg_bound(req).name == "rank"


def test_descent_failure_is_c():
    req = bd.BoundRequest(5, pure_cubic(11), 1000)
    assert bd.descent_failure_avg_bound(req).interval == bd.c_constant(req)


def test_mw_composer():
    req = bd.BoundRequest(3, pure_cubic(11), 2000)
    avg = bd.multiquadratic_goodchar_avg(3, EISENSTEIN)
    one = bd.mw_multiplicity_avg_bound(req, 1, avg)
    two = bd.mw_multiplicity_avg_bound(req, 2, avg)
    assert two == one.scale(Fraction(1, 2))
    assert bd.mw_bound(req, 1).interval == one
    with pytest.raises(ValueError, match="violated"):
        bd.mw_multiplicity_avg_bound(req, 0, avg)
    q = bd.BoundRequest(2, S3, 2000)
    assert bd.mw_bound(q, 1).interval == bd.fixed_space_avg_bound(q).interval


def test_c3_over_eisenstein_field_values():
    """C_3(K_ell / Q(sqrt -3)) at L = 10^4 for the four primes 2 mod 3."""
    got = {ell: float(bd.c_constant(bd.BoundRequest(3, pure_cubic(ell), 10**4)).lo) for ell in (11, 17, 23, 29)}
    for ell, lo in got.items():
        # support {2, 3, ell}: each inert or ramified in Q(sqrt -3), one prime above each
        finite = 2 * 3 + 2
        s = float_prime_sum(EISENSTEIN, {2, 3, ell}, 10**4)
        assert abs(lo - (finite + 2 * s)) < 1e-9
    assert got[11] < got[17] < got[23] < got[29]
