"""Truncated formal Dirichlet series sum_{n<=N} a_n n^-s.

Coefficients are exact (``int``/``Fraction``); the numeric von Mangoldt
series is the one place floats appear.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .arith import mangoldt_table, mobius_table, primes_upto, smallest_prime_factor
from .errors import MissingPrime, NotAUnit, TruncationMismatch


class _Infinity:
    """Order of the zero series; compares above every integer."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITY = _Infinity()


@dataclass(frozen=True)
class FormalDirichletSeries:
    a: tuple  # a[k] is the coefficient of (k+1)^-s

    @property
    def N(self) -> int:
        return len(self.a)

    @classmethod
    def from_function(cls, f, N: int) -> FormalDirichletSeries:
        return cls(tuple(f(n) for n in range(1, N + 1)))

    @classmethod
    def one(cls, N: int) -> FormalDirichletSeries:
        return cls((1,) + (0,) * (N - 1))

    @classmethod
    def zero(cls, N: int) -> FormalDirichletSeries:
        return cls((0,) * N)

    def __getitem__(self, n: int):
        """Coefficient of n^-s (1-based)."""
        if not 1 <= n <= self.N:
            raise IndexError(n)
        return self.a[n - 1]

    def order(self):
        """Least n with a_n != 0, or INFINITY for the zero series."""
        for i, x in enumerate(self.a):
            if x != 0:
                return i + 1
        return INFINITY

    def _check(self, other):
        if self.N != other.N:
            raise TruncationMismatch(f"truncations differ: {self.N} vs {other.N}")

    def __add__(self, other):
        self._check(other)
        return FormalDirichletSeries(tuple(x + y for x, y in zip(self.a, other.a)))

    def __sub__(self, other):
        self._check(other)
        return FormalDirichletSeries(tuple(x - y for x, y in zip(self.a, other.a)))

    def __neg__(self):
        return FormalDirichletSeries(tuple(-x for x in self.a))

    def __mul__(self, other):
        if not isinstance(other, FormalDirichletSeries):
            return FormalDirichletSeries(tuple(other * x for x in self.a))
        self._check(other)
        N = self.N
        c = [0] * N
        for i in range(1, N + 1):
            ai = self.a[i - 1]
            if ai == 0:
                continue
            for j in range(1, N // i + 1):
                bj = other.a[j - 1]
                if bj != 0:
                    c[i * j - 1] += ai * bj
        return FormalDirichletSeries(tuple(c))

    __rmul__ = __mul__

    def inverse(self) -> FormalDirichletSeries:
        """Dirichlet inverse; needs a_1 != 0."""
        a1 = self.a[0]
        if a1 == 0:
            raise NotAUnit("a_1 = 0: series is not invertible")
        N = self.N
        inv_a1 = Fraction(1) / a1 if isinstance(a1, (int, Fraction)) else 1 / a1
        b = [0] * N
        b[0] = inv_a1
        for n in range(2, N + 1):
            s = 0
            for d in _proper_divisors_gt1(n):
                s += self.a[d - 1] * b[n // d - 1]
            b[n - 1] = -s * inv_a1
        return FormalDirichletSeries(tuple(_normalize(x) for x in b))

    def is_multiplicative(self) -> bool:
        N = self.N
        if self.a[0] != 1:
            return False
        for m in range(2, N + 1):
            for n in range(m + 1, N // m + 1):
                if math.gcd(m, n) == 1 and self[m * n] != self[m] * self[n]:
                    return False
        return True

    def to_csv(self) -> str:
        """Lines ``n,numerator,denominator``."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for n, x in enumerate(self.a, start=1):
            fx = Fraction(x)
            w.writerow([n, fx.numerator, fx.denominator])
        return buf.getvalue()


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _proper_divisors_gt1(n):
    # divisors d of n with d > 1, i.e. all terms a_d b_{n/d} except d = 1
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            if d > 1:
                out.append(d)
            if d * d != n:
                out.append(n // d)
        d += 1
    return out


def ds_add(f: FormalDirichletSeries, g: FormalDirichletSeries) -> FormalDirichletSeries:
    return f + g


def ds_mul(f: FormalDirichletSeries, g: FormalDirichletSeries) -> FormalDirichletSeries:
    return f * g


def ds_invert(f: FormalDirichletSeries) -> FormalDirichletSeries:
    return f.inverse()


def zeta_series(N: int) -> FormalDirichletSeries:
    return FormalDirichletSeries((1,) * N)


def mobius_series(N: int) -> FormalDirichletSeries:
    mu = mobius_table(N)
    return FormalDirichletSeries(tuple(int(x) for x in mu[1:]))


# ---------------------------------------------------------------------------
# Euler products


def _local_coefficients(factor, kmax: int) -> list:
    """Power-series coefficients c_0..c_kmax of a local factor in x = p^-s.

    ``factor`` is a polynomial (sequence, constant term first) or a pair
    ``(numerator, denominator)`` read as numerator/denominator.
    """
    if isinstance(factor, tuple) and len(factor) == 2 and all(isinstance(f, (list, tuple)) for f in factor):
        num, den = factor
    else:
        num, den = factor, (1,)
    if den[0] != 1 or (num and num[0] != 1):
        raise ValueError("local factors must have constant term 1")
    c = []
    for k in range(kmax + 1):
        s = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            s -= den[j] * c[k - j]
        c.append(s)
    return [_normalize(x) for x in c]


def euler_product_expand(local_factors: Mapping[int, Sequence], N: int) -> FormalDirichletSeries:
    """Expand prod_p L_p(p^-s) into sum a_n n^-s, n <= N.

    Every prime p <= N must have an entry.  Each n factors uniquely as
    prod p^k, so a_n = prod c_{p,k}.
    """
    primes = [int(p) for p in primes_upto(N)] if N >= 2 else []
    missing = [p for p in primes if p not in local_factors]
    if missing:
        raise MissingPrime(f"no local factor for primes {missing[:5]}")
    coeffs = {}
    for p in primes:
        kmax = int(math.log(N) / math.log(p)) + 1
        coeffs[p] = _local_coefficients(local_factors[p], kmax)
    spf = smallest_prime_factor(N)
    a = [1] * N
    for n in range(2, N + 1):
        p = int(spf[n])
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        a[n - 1] = coeffs[p][k] * a[m - 1]
    return FormalDirichletSeries(tuple(a))


def geometric_factor(c=1):
    """(1 - c x)^-1 as a (numerator, denominator) pair."""
    return ((1,), (1, -c))


# ---------------------------------------------------------------------------
# von Mangoldt


def mangoldt_exact(N: int) -> list:
    """``[None, None, 2, 3, 2, 5, None, ...]``: the prime p when n = p^k, else None."""
    return mangoldt_table(N)


def log_derivative_mangoldt(N: int) -> FormalDirichletSeries:
    """-zeta'/zeta as sum lambda(n) n^-s with lambda(p^k) = log p (float coefficients)."""
    table = mangoldt_table(N)
    return FormalDirichletSeries(tuple(0.0 if table[n] is None else math.log(table[n]) for n in range(1, N + 1)))


def log_series(N: int) -> FormalDirichletSeries:
    """-zeta'(s) = sum log(n) n^-s."""
    return FormalDirichletSeries(tuple(math.log(n) for n in range(1, N + 1)))
