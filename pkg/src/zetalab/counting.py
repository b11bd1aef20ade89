"""Rational point counts over F_{p^n}.

Two routes:

* enumeration of points, vectorized with numpy over the log/antilog tables
  of the field, and chunked so chunks can be counted concurrently;
* for diagonal hypersurfaces ``a_0 x_0^d + ... + a_r x_r^d = 0``, the
  classical expansion of the count in multiplicative characters, which
  reduces to Jacobi sums of pairs of characters.
"""

from __future__ import annotations

import cmath
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import FieldMismatch, NonHomogeneous, ZeroCoefficient
from .ffield import FieldElement, FiniteField, make_field, multiplicative_generator
from .variety import VarietySpec

CHUNK = 1 << 18
INTEGRALITY_TOL = 1e-6


@dataclass(frozen=True)
class PointCounts:
    q: int
    counts: tuple[int, ...]  # counts[k] = |X(F_{q^(k+1)})|

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, k):
        return self.counts[k]


# ---------------------------------------------------------------------------
# enumeration


class _Evaluator:
    """Evaluates the defining polynomials of ``V`` over ``F`` on batches of points."""

    def __init__(self, V: VarietySpec, F: FiniteField):
        tab = F.tables
        self.tab = tab
        self.qm1 = F.order - 1
        # each term: (log of coefficient, exponent vector)
        self.polys = [
            [(int(tab.log[c]), np.array(e, dtype=np.int64)) for c, e in poly] for poly in V.polys
        ]

    def zero_mask(self, coords: np.ndarray) -> np.ndarray:
        """coords: (nvars, N) array of element codes -> bool mask of common zeros."""
        tab = self.tab
        npts = coords.shape[1]
        mask = np.ones(npts, dtype=bool)
        logs = tab.log[coords]
        iszero = coords == 0
        for poly in self.polys:
            acc = np.zeros((npts, tab.n), dtype=np.int64)
            for lc, exps in poly:
                lg = np.full(npts, lc, dtype=np.int64)
                vanish = np.zeros(npts, dtype=bool)
                for j in np.flatnonzero(exps):
                    lg += exps[j] * logs[j]
                    vanish |= iszero[j]
                code = tab.exp[lg % self.qm1] if self.qm1 else np.zeros(npts, dtype=np.int64)
                code[vanish] = 0
                acc += tab.digits[code]
            mask &= ~np.any(acc % tab.p, axis=1)
        return mask


def _chunk_count(ev, prefix, nfree, q, start, stop):
    idx = np.arange(start, stop, dtype=np.int64)
    rows = [np.full(stop - start, c, dtype=np.int64) for c in prefix]
    for _ in range(nfree):
        idx, r = np.divmod(idx, q)
        rows.append(r)
    coords = np.array(rows, dtype=np.int64).reshape(len(rows), stop - start)
    return int(np.count_nonzero(ev.zero_mask(coords)))


def _count_chart(ev, prefix, nfree, q, jobs):
    """Number of zeros among points (prefix..., free coordinates)."""
    total = q**nfree
    bounds = [(s, min(s + CHUNK, total)) for s in range(0, total, CHUNK)]
    if jobs and jobs > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(lambda b: _chunk_count(ev, prefix, nfree, q, *b), bounds)
            return sum(parts)
    return sum(_chunk_count(ev, prefix, nfree, q, *b) for b in bounds)


def count_affine(V: VarietySpec, n: int = 1, jobs: int | None = None) -> int:
    """|V(F_{p^n})| for an affine variety."""
    if V.projective:
        raise ValueError("count_affine expects an affine variety")
    F = make_field(V.p, n)
    return _count_chart(_Evaluator(V, F), [], V.nvars, F.order, jobs)


def count_projective(V: VarietySpec, n: int = 1, jobs: int | None = None) -> int:
    """|V(F_{p^n})| for a projective variety.

    Points are normalized so the first nonzero coordinate is 1, which walks
    the disjoint standard cells ``(0, .., 0, 1, *, .., *)`` once each; this
    equals the cone count divided by ``q - 1``.
    """
    if not V.projective:
        raise ValueError("count_projective expects a projective variety")
    for i, poly in enumerate(V.polys):
        if len({sum(e) for _, e in poly}) > 1:
            raise NonHomogeneous(f"polynomial #{i} is not homogeneous")
    F = make_field(V.p, n)
    ev = _Evaluator(V, F)
    k = V.nvars
    return sum(_count_chart(ev, [0] * i + [1], k - i - 1, F.order, jobs) for i in range(k))


def count_points(V: VarietySpec, n: int = 1, jobs: int | None = None) -> int:
    return count_projective(V, n, jobs) if V.projective else count_affine(V, n, jobs)


def count_sequence(V: VarietySpec, N: int, jobs: int | None = None) -> PointCounts:
    if N < 1:
        raise ValueError("need N >= 1")
    return PointCounts(V.p, tuple(count_points(V, n, jobs) for n in range(1, N + 1)))


# ---------------------------------------------------------------------------
# multiplicative characters and Jacobi sums


@dataclass(frozen=True)
class MultCharTable:
    """chi(g^j) = exp(2 pi i * power * j / order) for the fixed generator g.

    ``order`` divides q - 1; chi(0) = 0 for every character, trivial included.
    """

    field: FiniteField
    order: int
    power: int = 1

    def __post_init__(self):
        if (self.field.order - 1) % self.order:
            raise ValueError(f"order {self.order} does not divide q - 1 = {self.field.order - 1}")
        object.__setattr__(self, "power", self.power % self.order)

    @property
    def is_trivial(self) -> bool:
        return self.power == 0

    def exponent(self, x: FieldElement | int):
        """k with chi(x) = exp(2 pi i k / order), or None for x = 0.  Integers are read mod p."""
        if isinstance(x, int):
            x = self.field(x)
        if x.field != self.field:
            raise FieldMismatch("element and character live over different fields")
        j = int(self.field.tables.log[x.code])
        if j < 0:
            return None
        return self.power * j % self.order

    def __call__(self, x: FieldElement | int) -> complex:
        k = self.exponent(x)
        return 0j if k is None else _root_of_unity(k, self.order)

    def __mul__(self, other: MultCharTable) -> MultCharTable:
        if other.field != self.field:
            raise FieldMismatch("characters over different fields")
        L = math.lcm(self.order, other.order)
        return MultCharTable(self.field, L, self.power * (L // self.order) + other.power * (L // other.order))

    def reduced(self) -> MultCharTable:
        """Same character written with its exact order."""
        g = math.gcd(self.power, self.order)
        return MultCharTable(self.field, self.order // g, self.power // g)

    def key(self):
        r = self.reduced()
        return (r.order, r.power)


def _root_of_unity(k: int, m: int) -> complex:
    return cmath.exp(2j * cmath.pi * k / m)


@lru_cache(maxsize=None)
def _value_vector(F: FiniteField, order: int, power: int) -> np.ndarray:
    """chi(x) indexed by element code, chi(0) = 0."""
    log = F.tables.log
    vals = np.exp(2j * np.pi * power * (log % order) / order)
    vals[log < 0] = 0
    return vals


@lru_cache(maxsize=None)
def _one_minus(F: FiniteField) -> np.ndarray:
    """Code of 1 - x for each code x."""
    one = F.one
    return np.array([(one - F.from_code(c)).code for c in range(F.order)], dtype=np.int64)


def jacobi_sum(chi1: MultCharTable, chi2: MultCharTable) -> complex:
    """J(chi1, chi2) = sum over x + y = 1 of chi1(x) chi2(y), with chi(0) = 0."""
    if chi1.field != chi2.field:
        raise FieldMismatch("Jacobi sum of characters over different fields")
    F = chi1.field
    a, b = chi1.reduced(), chi2.reduced()
    v1 = _value_vector(F, a.order, a.power)
    v2 = _value_vector(F, b.order, b.power)
    return complex(np.sum(v1 * v2[_one_minus(F)]))


def _chi_of_minus_one(chi: MultCharTable) -> complex:
    return chi(-chi.field.one)


def jacobi_sum_multi(chars) -> complex:
    """J(chi_1..chi_l) = sum over u_1+..+u_l = 1 of prod chi_i(u_i), all chi_i nontrivial.

    Built from pairwise Jacobi sums: peeling off the last character,
    J(chi_1..chi_l) = J(chi_1..chi_{l-1}) J(chi_l, psi) + J0(chi_1..chi_{l-1})
    where psi = chi_1...chi_{l-1}.
    """
    chars = list(chars)
    if any(c.is_trivial for c in chars):
        raise ValueError("jacobi_sum_multi expects nontrivial characters")
    if len(chars) == 1:
        return 1 + 0j
    head, last = chars[:-1], chars[-1]
    psi = _product(head)
    val = jacobi_sum_multi(head) * jacobi_sum(last, psi)
    if psi.is_trivial:
        val += jacobi_zero(head)
    return val


def jacobi_zero(chars) -> complex:
    """J0(chi_1..chi_l) = sum over u_1+..+u_l = 0 of prod chi_i(u_i), all nontrivial."""
    chars = list(chars)
    if any(c.is_trivial for c in chars):
        raise ValueError("jacobi_zero expects nontrivial characters")
    if not _product(chars).is_trivial or len(chars) == 1:
        return 0j
    q = chars[0].field.order
    return _chi_of_minus_one(chars[-1]) * (q - 1) * jacobi_sum_multi(chars[:-1])


def _product(chars) -> MultCharTable:
    out = chars[0]
    for c in chars[1:]:
        out = out * c
    return out.reduced()


def count_diagonal_hypersurface(a, d: int, F: FiniteField) -> int:
    """Projective count of a_0 x_0^d + ... + a_r x_r^d = 0 over F via Jacobi sums.

    With e = gcd(d, q - 1), the number of x with x^d = u is the sum of chi(u)
    over the characters of order dividing e (trivial one taking 1 at 0).
    Expanding the affine count over tuples of such characters leaves only the
    all-trivial tuple (q^r) and the all-nontrivial tuples with trivial product,
    each weighted by prod chi_i(a_i)^-1 J0(chi_0..chi_r).
    """
    coeffs = [F(int(c)) for c in a]
    if len(coeffs) < 2:
        raise ValueError("need at least two variables (r >= 1)")
    if any(c.is_zero() for c in coeffs):
        raise ZeroCoefficient(f"coefficients {list(a)} vanish in F_{F.p}")
    if d < 1:
        raise ValueError("exponent d must be >= 1")
    q = F.order
    r = len(coeffs) - 1
    e = math.gcd(d, q - 1)
    total = complex(q**r)
    nontrivial = [MultCharTable(F, e, k) for k in range(1, e)]
    for combo in itertools.product(nontrivial, repeat=r + 1):
        if not _product(list(combo)).is_trivial:
            continue
        weight = 1 + 0j
        for chi, c in zip(combo, coeffs):
            weight /= chi(c)
        total += weight * jacobi_zero(combo)
    affine = total.real
    if abs(total.imag) > INTEGRALITY_TOL or abs(affine - round(affine)) > INTEGRALITY_TOL:
        raise ArithmeticError(f"character sum {total} is not integral within tolerance")
    affine_int = round(affine)
    proj, rem = divmod(affine_int - 1, q - 1)
    if rem:
        raise ArithmeticError("affine cone count not divisible by q - 1")
    return proj


def diagonal_variety(a, d: int, p: int) -> VarietySpec:
    """The same hypersurface as a projective :class:`VarietySpec` over F_p."""
    names = tuple(f"x{i}" for i in range(len(a)))
    poly = []
    for i, c in enumerate(a):
        if c % p:
            exps = [0] * len(a)
            exps[i] = d
            poly.append((c % p, tuple(exps)))
    return VarietySpec(p, names, True, (tuple(sorted(poly, key=lambda t: t[1])),))


__all__ = [
    "PointCounts",
    "MultCharTable",
    "count_affine",
    "count_projective",
    "count_points",
    "count_sequence",
    "jacobi_sum",
    "jacobi_sum_multi",
    "jacobi_zero",
    "count_diagonal_hypersurface",
    "diagonal_variety",
    "multiplicative_generator",
]
