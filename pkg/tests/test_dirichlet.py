import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetalab.arith import primes_upto
from zetalab.dirichlet import (
    INFINITY,
    FormalDirichletSeries,
    ds_add,
    ds_invert,
    ds_mul,
    euler_product_expand,
    geometric_factor,
    log_derivative_mangoldt,
    log_series,
    mangoldt_exact,
    mobius_series,
    zeta_series,
)
from zetalab.errors import MissingPrime, NotAUnit, TruncationMismatch


def trial_mobius(n):
    """Independent oracle: trial division."""
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    return -out if n > 1 else out


def naive_mul(a, b):
    N = len(a)
    c = [Fraction(0)] * N
    for i in range(1, N + 1):
        for j in range(1, N // i + 1):
            c[i * j - 1] += Fraction(a[i - 1]) * b[j - 1]
    return c


def unit(N):
    return FormalDirichletSeries.one(N)


def test_zeta_times_mobius():
    assert ds_mul(zeta_series(50), mobius_series(50)) == unit(50)


def test_add_zero_and_point_product():
    f = FormalDirichletSeries.from_function(lambda n: Fraction(n, 3), 20)
    assert ds_add(f, FormalDirichletSeries.zero(20)) == f
    e2 = FormalDirichletSeries.from_function(lambda n: int(n == 2), 20)
    e3 = FormalDirichletSeries.from_function(lambda n: int(n == 3), 20)
    assert ds_mul(e2, e3) == FormalDirichletSeries.from_function(lambda n: int(n == 6), 20)


def test_invert_examples():
    N = 200
    inv = ds_invert(zeta_series(N))
    assert list(inv.a) == [trial_mobius(n) for n in range(1, N + 1)]
    assert ds_invert(unit(10)) == unit(10)
    with pytest.raises(NotAUnit):
        ds_invert(FormalDirichletSeries.from_function(lambda n: int(n == 2), 10))


def test_truncation_mismatch():
    with pytest.raises(TruncationMismatch):
        ds_add(zeta_series(5), zeta_series(6))


def test_order_sentinel():
    assert FormalDirichletSeries.zero(10).order() is INFINITY
    assert zeta_series(10).order() == 1
    assert FormalDirichletSeries.from_function(lambda n: int(n >= 4), 10).order() == 4


def test_euler_product_examples():
    N = 100
    primes = [int(p) for p in primes_upto(N)]
    assert euler_product_expand({p: geometric_factor() for p in primes}, N) == zeta_series(N)
    shifted = euler_product_expand({p: geometric_factor(p) for p in primes}, N)
    assert list(shifted.a) == list(range(1, N + 1))
    only2 = {p: (1,) for p in primes}
    only2[2] = (1, 1)
    assert list(euler_product_expand(only2, N).a) == [1, 1] + [0] * (N - 2)
    with pytest.raises(MissingPrime):
        euler_product_expand({2: (1,)}, 10)


def test_euler_product_matches_convolution():
    # product of single-prime series multiplied out with ds_mul
    N = 60
    primes = [int(p) for p in primes_upto(N)]
    factors = {p: (1, -1) for p in primes}  # 1 - p^-s: gives mu
    expanded = euler_product_expand(factors, N)
    acc = unit(N)
    for p in primes:
        acc = ds_mul(acc, FormalDirichletSeries.from_function(lambda n, p=p: {1: 1, p: -1}.get(n, 0), N))
    assert expanded == acc == mobius_series(N)


def test_mangoldt_support_and_values():
    lam = log_derivative_mangoldt(10)
    assert [n for n in range(1, 11) if lam[n] != 0] == [2, 3, 4, 5, 7, 8, 9]
    assert lam[6] == 0
    assert math.isclose(lam[8], math.log(2))
    assert mangoldt_exact(10)[8] == 2  # lambda(8) stored as the prime 2


def test_mangoldt_divisor_sum_is_log():
    N = 10_000
    lam = log_derivative_mangoldt(N).a
    acc = [0.0] * (N + 1)
    for d in range(1, N + 1):
        if lam[d - 1]:
            for m in range(d, N + 1, d):
                acc[m] += lam[d - 1]
    assert max(abs(acc[n] - math.log(n)) for n in range(1, N + 1)) < 1e-12


def test_log_derivative_identity():
    # -zeta' * zeta^-1 = Lambda, with zeta' having coefficients -log n
    N = 300
    minus_dzeta = log_series(N)
    got = naive_mul([float(x) for x in minus_dzeta.a], [float(x) for x in mobius_series(N).a])
    lam = log_derivative_mangoldt(N).a
    assert max(abs(float(g) - lam[i]) for i, g in enumerate(got)) < 1e-9


def test_csv_dump():
    f = FormalDirichletSeries((Fraction(1), Fraction(-1, 2), Fraction(0)))
    assert f.to_csv() == "1,1,1\n2,-1,2\n3,0,1\n"


# --- properties ----------------------------------------------------------

coeff = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 6))


def series(N):
    return st.lists(coeff, min_size=N, max_size=N).map(lambda a: FormalDirichletSeries(tuple(a)))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 200).flatmap(lambda N: st.tuples(series(N), series(N), series(N))))
def test_ring_axioms(fgh):
    f, g, h = fgh
    assert ds_mul(ds_mul(f, g), h) == ds_mul(f, ds_mul(g, h))
    assert ds_mul(f, ds_add(g, h)) == ds_add(ds_mul(f, g), ds_mul(f, h))
    assert ds_mul(f, g) == ds_mul(g, f)
    assert list(ds_mul(f, g).a) == naive_mul(f.a, g.a)


def sparse_series(N):
    return st.tuples(st.integers(1, N), coeff.filter(bool), series(N)).map(
        lambda t: FormalDirichletSeries(tuple(Fraction(0) if n < t[0] else (t[1] if n == t[0] else x) for n, x in enumerate(t[2].a, 1)))
    )


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 120).flatmap(lambda N: st.tuples(sparse_series(N), sparse_series(N))))
def test_valuation(fg):
    f, g = fg
    s = ds_add(f, g).order()
    assert s is INFINITY or s >= min(f.order(), g.order())
    if f.order() * g.order() <= f.N:
        assert ds_mul(f, g).order() == f.order() * g.order()


@settings(max_examples=30, deadline=None)
@given(st.dictionaries(st.sampled_from([2, 3, 5, 7, 11, 13]), st.lists(st.integers(-3, 3), min_size=1, max_size=4)))
def test_euler_product_multiplicative(extra):
    N = 150
    factors = {int(p): geometric_factor() for p in primes_upto(N)}
    for p, poly in extra.items():
        factors[p] = tuple([1] + poly)
    f = euler_product_expand(factors, N)
    assert f[1] == 1
    for m in range(1, N + 1):
        for n in range(1, N // m + 1):
            if math.gcd(m, n) == 1:
                assert f[m * n] == f[m] * f[n]
