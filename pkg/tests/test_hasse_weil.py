import math

import pytest

from zetalab.arith import primes_upto
from zetalab.counting import count_projective
from zetalab.errors import BadReduction, DivergentRegion, SingularCurve
from zetalab.hasse_weil import (
    EllipticCurveQ,
    ap_table,
    count_points_fp,
    good_reduction,
    hasse_bound_holds,
    local_factor,
    partial_l,
    trace_ap,
)

BATTERY = [(-1, 0), (1, 0), (0, 1), (0, -2), (-2, 1), (1, 1), (-7, 6), (3, 5), (-11, 14), (2, -3)]


def naive_count(E, p):
    """Enumerate all p^2 affine pairs, plus the point at infinity."""
    return 1 + sum((y * y - x**3 - E.a * x - E.b) % p == 0 for x in range(p) for y in range(p))


def test_reduction_examples():
    E = EllipticCurveQ(-1, 0)
    assert E.discriminant == 64
    assert good_reduction(E, 5)
    assert not good_reduction(E, 2)
    with pytest.raises(SingularCurve):
        EllipticCurveQ(0, 0)


def test_trace_examples():
    E = EllipticCurveQ(-1, 0)
    assert naive_count(E, 5) == 8
    assert trace_ap(E, 5) == -2
    with pytest.raises(BadReduction):
        trace_ap(E, 3)
    assert trace_ap(EllipticCurveQ(1, 0), 7) == 0
    assert local_factor(E, 5).poly == (1, 2, 5)
    with pytest.raises(BadReduction):
        local_factor(E, 2)


@pytest.mark.parametrize("ab", BATTERY)
def test_count_matches_naive(ab):
    E = EllipticCurveQ(*ab)
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31):
        assert count_points_fp(E, p) == naive_count(E, p)


@pytest.mark.parametrize("ab", BATTERY)
def test_hasse_bound_to_10000(ab):
    E = EllipticCurveQ(*ab)
    for p, ap, good in ap_table(E, 10_000):
        if good:
            assert hasse_bound_holds(ap, p)
            assert ap * ap <= 4 * p


@pytest.mark.parametrize("ab", BATTERY[:4])
def test_root_modulus(ab):
    E = EllipticCurveQ(*ab)
    for p in primes_upto(3000):
        p = int(p)
        if good_reduction(E, p):
            for r in local_factor(E, p).roots():
                assert abs(abs(r) - p**-0.5) < 1e-10


@pytest.mark.parametrize("ab", BATTERY[:5])
def test_count_over_quadratic_extension(ab):
    E = EllipticCurveQ(*ab)
    for p in (5, 7, 11, 13):
        if not good_reduction(E, p):
            continue
        nu2 = count_projective(E.projective_model(p), 2)
        assert local_factor(E, p).count_over_extension(2) == nu2
        assert count_projective(E.projective_model(p), 1) == count_points_fp(E, p)


def test_partial_l():
    E = EllipticCurveQ(-1, 0)
    a, b = partial_l(E, 2, 1000), partial_l(E, 2, 10_000)
    assert abs(a - b) < 1e-3
    with pytest.raises(DivergentRegion):
        partial_l(E, 1.2, 100)
    # the product over good primes is a product of its own local factors
    prod = 1
    for p in (5, 7, 11):
        prod /= 1 - trace_ap(E, p) * p**-3 + p ** (1 - 6)
    assert math.isclose(abs(partial_l(E, 3, 12)), abs(prod), rel_tol=1e-12)
