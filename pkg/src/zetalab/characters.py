"""Dirichlet characters mod m, stored as exponent vectors on fixed generators.

A character is determined by exponents e_i with chi(g_i) = exp(2 pi i e_i / o_i)
where g_i are the generators of (Z/m)* (orders o_i).  Values are kept as
exact phases (Fractions mod 1) so identities among roots of unity can be
checked without rounding; complex floats appear only at evaluation.
"""

from __future__ import annotations

import cmath
import csv
import io
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .arith import divisors, euler_phi, factorize, multiplicative_order, prime_sieve
from .errors import DivergentRegion, NotCoprime


@dataclass(frozen=True)
class UnitGroup:
    m: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]

    @cached_property
    def discrete_log(self) -> dict[int, tuple[int, ...]]:
        """Unit residue -> exponent vector against ``generators``."""
        out = {}
        for exps in itertools.product(*(range(o) for o in self.orders)):
            x = 1 % self.m
            for g, e in zip(self.generators, exps):
                x = x * pow(g, e, self.m) % self.m
            out[x] = exps
        return out

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    @property
    def size(self) -> int:
        return math.prod(self.orders)


def _primitive_root(pk: int, p: int) -> int:
    phi = euler_phi(pk)
    for g in range(2, pk):
        if g % p and multiplicative_order(g, pk) == phi:
            return g
    return 1


def _crt_lift(g: int, pk: int, m: int) -> int:
    """x = g mod pk, x = 1 mod m/pk."""
    rest = m // pk
    if rest == 1:
        return g % m
    # x = 1 + rest * u with 1 + rest * u = g (mod pk)
    u = (g - 1) * pow(rest, -1, pk) % pk
    return (1 + rest * u) % m


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroup:
    """(Z/m)* as a product of cyclic groups, one or two per prime power of m.

    Odd p^k contributes its least primitive root; 4 contributes -1; 2^k with
    k >= 3 contributes -1 and 5.  Each local generator is lifted to m so it
    is 1 at the other prime powers.
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    gens, orders = [], []
    for p, k in sorted(factorize(m).items()) if m > 1 else []:
        pk = p**k
        if p == 2:
            if k >= 2:
                gens.append(_crt_lift(pk - 1, pk, m))
                orders.append(2)
            if k >= 3:
                gens.append(_crt_lift(5, pk, m))
                orders.append(2 ** (k - 2))
        else:
            gens.append(_crt_lift(_primitive_root(pk, p), pk, m))
            orders.append(pk - pk // p)
    return UnitGroup(m, tuple(gens), tuple(orders))


_QUARTER = (1 + 0j, 1j, -1 + 0j, -1j)


def phase_to_complex(ph: Fraction) -> complex:
    if (4 * ph).denominator == 1:
        return _QUARTER[int(4 * ph) % 4]
    return cmath.exp(2j * math.pi * ph)


@dataclass(frozen=True)
class DirichletCharacter:
    group: UnitGroup
    exponents: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.group.m

    def phase(self, n: int):
        """Fraction k/L in [0, 1) with chi(n) = exp(2 pi i k/L), or None if gcd(n, m) > 1."""
        m = self.m
        if math.gcd(n, m) != 1:
            return None
        exps = self.group.discrete_log[n % m]
        ph = sum((Fraction(e * x, o) for e, x, o in zip(self.exponents, exps, self.group.orders)), Fraction(0))
        return ph - math.floor(ph)

    def __call__(self, n: int) -> complex:
        ph = self.phase(n)
        if ph is None:
            return 0j
        return phase_to_complex(ph)

    @cached_property
    def order(self) -> int:
        return math.lcm(1, *(o // math.gcd(e, o) for e, o in zip(self.exponents, self.group.orders)))

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    def values(self) -> np.ndarray:
        """chi(0..m-1) as a complex array."""
        return np.array([self(n) for n in range(self.m)], dtype=complex)

    @cached_property
    def conductor(self) -> int:
        return conductor(self)

    def __repr__(self):
        return f"DirichletCharacter(m={self.m}, exponents={self.exponents})"


def make_character(m: int, exponents) -> DirichletCharacter:
    G = unit_group(m)
    exps = tuple(int(e) % o for e, o in zip(exponents, G.orders))
    if len(exps) != len(G.orders):
        raise ValueError(f"mod {m} needs {len(G.orders)} exponents")
    return DirichletCharacter(G, exps)


def principal_character(m: int) -> DirichletCharacter:
    return make_character(m, [0] * len(unit_group(m).orders))


def all_characters(m: int) -> list[DirichletCharacter]:
    G = unit_group(m)
    return [DirichletCharacter(G, e) for e in itertools.product(*(range(o) for o in G.orders))]


def conductor(chi: DirichletCharacter) -> int:
    """Least f | m such that chi is trivial on units congruent to 1 mod f."""
    m = chi.m
    units = chi.group.discrete_log
    for f in divisors(m):
        if all(chi.phase(n) == 0 for n in units if (n - 1) % f == 0):
            return f
    return m


def primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod the conductor that induces chi."""
    f = conductor(chi)
    H = unit_group(f)
    exps = []
    for h, o in zip(H.generators, H.orders):
        n = h
        while math.gcd(n, chi.m) != 1:
            n += f
        ph = chi.phase(n)
        e = ph * o
        assert e.denominator == 1, "character does not factor through its conductor"
        exps.append(int(e))
    return DirichletCharacter(H, tuple(exps))


def primitive_characters(m: int) -> list[DirichletCharacter]:
    return [chi for chi in all_characters(m) if conductor(chi) == m]


# ---------------------------------------------------------------------------
# exact sums of roots of unity


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num = _int_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _int_divexact(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    assert not any(a), "inexact division"
    return q


def _int_mod(a, b):
    a = list(a)
    while len(a) >= len(b):
        c = a[-1]  # b is monic
        shift = len(a) - len(b)
        for j, y in enumerate(b):
            a[shift + j] -= c * y
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def root_of_unity_sum(phases) -> tuple[int, ...]:
    """Reduce sum exp(2 pi i ph) modulo the cyclotomic polynomial; () iff the sum is 0."""
    phases = list(phases)
    if not phases:
        return ()
    L = math.lcm(*(ph.denominator for ph in phases))
    counts = [0] * L
    for ph in phases:
        counts[int(ph * L) % L] += 1
    return _int_mod(counts, cyclotomic_polynomial(L))


def character_sum_exact(chi: DirichletCharacter) -> tuple[int, ...]:
    """sum_{n mod m} chi(n) as a reduced element of Z[x]/Phi_L; () means exactly zero."""
    return root_of_unity_sum(chi.phase(n) for n in chi.group.discrete_log)


# ---------------------------------------------------------------------------
# L-series


@dataclass(frozen=True)
class LValue:
    value: complex
    error_bound: float


def l_partial_eval(chi: DirichletCharacter, s: complex, N: int) -> LValue:
    """sum_{n<=N} chi(n) n^-s with a rigorous bound on the tail.

    Nonprincipal chi: every interval sum of chi has modulus at most phi(m)/2,
    so Abel summation bounds the tail by (phi(m)/2) |s| / (sigma N^sigma).
    Principal chi: the tail is at most sum_{n>N} n^-sigma <= N^(1-sigma)/(sigma-1).
    """
    s = complex(s)
    sigma = s.real
    if chi.is_principal and sigma <= 1:
        raise DivergentRegion(f"principal character needs Re(s) > 1, got {sigma}")
    if sigma <= 0:
        raise DivergentRegion(f"L-series needs Re(s) > 0, got {sigma}")
    vals = chi.values()
    total = 0j
    step = 1 << 20
    for start in range(1, N + 1, step):
        n = np.arange(start, min(start + step, N + 1), dtype=np.float64)
        total += complex(np.sum(vals[n.astype(np.int64) % chi.m] * np.exp(-s * np.log(n))))
    if chi.is_principal:
        bound = N ** (1 - sigma) / (sigma - 1)
    else:
        bound = euler_phi(chi.m) / 2 * abs(s) / (sigma * N**sigma)
    return LValue(total, float(bound))


# ---------------------------------------------------------------------------
# Euler factors and cyclotomic fields


def _int_poly_power(base, e):
    out = [1]
    for _ in range(e):
        out = [sum(out[i] * base[k - i] for i in range(len(out)) if 0 <= k - i < len(base)) for k in range(len(out) + len(base) - 1)]
    return tuple(out)


def _expand_linear_factors(values) -> tuple[np.ndarray, tuple[int, ...], float]:
    """prod (1 - v t) in complex floats, rounded to integers with the rounding residual."""
    c = np.array([1 + 0j])
    for v in values:
        c = np.convolve(c, np.array([1, -v]))
    ints = tuple(int(round(x.real)) for x in c)
    residual = float(max(abs(x - r) for x, r in zip(c, ints)))
    while len(ints) > 1 and ints[-1] == 0:
        ints = ints[:-1]
    return c, ints, residual


@dataclass(frozen=True)
class EulerFactorReport:
    m: int
    p: int
    f: int
    g: int
    product: tuple[int, ...]  # rounded prod_chi (1 - chi(p) t)
    expected: tuple[int, ...]  # (1 - t^f)^g
    residual: float

    @property
    def passed(self) -> bool:
        return self.product == self.expected and self.residual < 1e-6


def euler_factor_product_check(m: int, p: int) -> EulerFactorReport:
    if math.gcd(p, m) != 1:
        raise NotCoprime(f"gcd({p}, {m}) != 1")
    f = multiplicative_order(p, m)
    g = euler_phi(m) // f
    _, prod, residual = _expand_linear_factors(chi(p) for chi in all_characters(m))
    expected = _int_poly_power((1,) + (0,) * (f - 1) + (-1,), g)
    return EulerFactorReport(m, p, f, g, prod, expected, residual)


@dataclass(frozen=True)
class CyclotomicFactorReport:
    m: int
    p: int
    from_characters: tuple[int, ...]  # prod over d | m, chi in Prim(d) of (1 - chi(p) t)
    from_splitting: tuple[int, ...]  # (1 - t^f)^g
    ramification_index: int
    residue_degree: int
    n_primes: int
    residual: float

    @property
    def agree(self) -> bool:
        return self.from_characters == self.from_splitting and self.residual < 1e-6


def cyclotomic_zeta_factor(m: int, p: int) -> CyclotomicFactorReport:
    """Local factor at p of zeta of Q(mu_m), as 1 / poly(p^-s), computed two ways.

    Character side: product over primitive characters of every conductor
    d | m.  Splitting side: with m = p^r m', p has ramification index
    phi(p^r), residue degree f = ord of p mod m', and g = phi(m')/f primes.
    """
    vals = []
    for d in divisors(m):
        for chi in primitive_characters(d):
            vals.append(chi(p))
    _, from_chars, residual = _expand_linear_factors(vals)
    r, mm = 0, m
    while mm % p == 0:
        mm //= p
        r += 1
    f = multiplicative_order(p % mm, mm) if mm > 1 else 1
    g = euler_phi(mm) // f
    split = _int_poly_power((1,) + (0,) * (f - 1) + (-1,), g)
    return CyclotomicFactorReport(m, p, from_chars, split, euler_phi(p**r), f, g, residual)


# ---------------------------------------------------------------------------
# primes in progressions


def progression_density(a: int, m: int, X: int) -> tuple[float, float]:
    """(pi(X; a mod m) / pi(X), 1/phi(m)) with primes from a sieve."""
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) != 1")
    if X < 100:
        raise ValueError("X must be at least 100")
    primes = np.flatnonzero(prime_sieve(X))
    hits = int(np.count_nonzero(primes % m == a % m))
    return hits / len(primes), 1 / euler_phi(m)


def character_table_csv(chi: DirichletCharacter) -> str:
    """Rows ``n,value`` for n mod m, value ``k/order`` (chi(n) = e^(2 pi i k/order)) or 0."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "chi"])
    o = chi.order
    for n in range(chi.m):
        ph = chi.phase(n)
        w.writerow([n, 0 if ph is None else f"{int(ph * o)}/{o}"])
    return buf.getvalue()
