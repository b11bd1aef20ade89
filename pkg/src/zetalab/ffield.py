"""Prime fields F_p and extensions F_{p^n} = F_p[t]/(f).

Elements are coefficient tuples ``(c_0, ..., c_{n-1})`` (low degree first).
Every element also has an integer *code* ``sum c_i p^i``; enumeration order,
the choice of modulus and "smallest generator" all use the code order.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache

import numpy as np

from .arith import factorize, is_prime
from .errors import DegreeZero, DivideByZero, FieldMismatch, NotPrime

# ---------------------------------------------------------------------------
# polynomials over F_p as coefficient lists, low degree first, no trailing 0s


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a, m, p):
    a = _trim(a)
    dm = len(m) - 1
    inv = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        a = _trim(a)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(f, p: int) -> bool:
    """Rabin-style test for a monic ``f`` over F_p."""
    f = _trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    t = [0, 1]
    x = t
    for k in range(1, n // 2 + 1):
        x = _ppowmod(x, p, f, p)  # x = t^(p^k) mod f
        if len(_pgcd(f, _psub(x, t, p), p)) != 1:
            return False
    return not _psub(_ppowmod(t, p**n, f, p), t, p)


def _decode(code: int, p: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        code, r = divmod(code, p)
        out.append(r)
    return tuple(out)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteField:
    p: int
    n: int
    modulus: tuple[int, ...]  # monic, low degree first, length n + 1

    @property
    def order(self) -> int:
        return self.p**self.n

    def __repr__(self):
        return f"F_{self.order}[{_fmt_poly(self.modulus)}]"

    def __call__(self, value) -> FieldElement:
        """Build an element from an int (reduced mod p) or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            coeffs = [int(value) % self.p] + [0] * (self.n - 1)
        else:
            coeffs = [int(c) for c in value]
            if len(coeffs) > self.n:
                coeffs = _pmod(coeffs, list(self.modulus), self.p)
            coeffs = [c % self.p for c in coeffs] + [0] * (self.n - len(coeffs))
        return FieldElement(tuple(coeffs), self)

    def from_code(self, code: int) -> FieldElement:
        return FieldElement(_decode(code, self.p, self.n), self)

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    @property
    def gen(self) -> FieldElement:
        """The class of t (the polynomial generator, not a multiplicative one)."""
        return self([0, 1])

    @cached_property
    def tables(self) -> FieldTables:
        return FieldTables(self)


@dataclass(frozen=True, eq=False)
class FieldElement:
    coeffs: tuple[int, ...]
    field: FiniteField = dc_field(repr=False)

    def __post_init__(self):
        f = self.field
        if len(self.coeffs) != f.n or any(not 0 <= c < f.p for c in self.coeffs):
            raise ValueError(f"coefficients {self.coeffs} not reduced for {f!r}")

    @property
    def code(self) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.p + c
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.field))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)), self.field)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(tuple(-a % p for a in self.coeffs), self.field)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        prod = _pmod(_pmul(_trim(self.coeffs), _trim(other.coeffs), f.p), list(f.modulus), f.p)
        return f(prod)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise DivideByZero("zero has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def frobenius(self) -> FieldElement:
        return self**self.field.p

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise DivideByZero("zero has no multiplicative order")
        order = self.field.order - 1
        for ell in factorize(order) if order > 1 else ():
            while order % ell == 0 and (self ** (order // ell)) == 1:
                order //= ell
        return order

    def __repr__(self):
        return _fmt_poly(self.coeffs) or "0"


def _fmt_poly(coeffs) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(reversed(terms))


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FiniteField:
    """F_{p^n} with the irreducible modulus of least code."""
    if n < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {n}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n == 1:
        return FiniteField(p, 1, (0, 1))
    for code in range(p**n):
        f = list(_decode(code, p, n)) + [1]
        if is_irreducible(f, p):
            return FiniteField(p, n, tuple(f))
    raise AssertionError("no irreducible polynomial found")  # unreachable


def elem_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if a.field != b.field:
        raise FieldMismatch(f"cannot combine elements of {a.field!r} and {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def enumerate_elements(F: FiniteField) -> list[FieldElement]:
    return [F.from_code(c) for c in range(F.order)]


@lru_cache(maxsize=None)
def multiplicative_generator(F: FiniteField) -> FieldElement:
    """Least element (in code order) of multiplicative order q - 1."""
    q = F.order
    for code in range(1, q):
        g = F.from_code(code)
        if g.multiplicative_order() == q - 1:
            return g
    raise AssertionError("multiplicative group is cyclic")  # unreachable


class FieldTables:
    """Log/antilog and digit tables used by the vectorized point counter.

    ``exp[k]`` is the code of g^k, ``log[c]`` the discrete log of code c
    (``-1`` for zero), ``digits[c]`` the coefficient vector of code c.
    """

    def __init__(self, F: FiniteField):
        q = F.order
        self.q = q
        self.p = F.p
        self.n = F.n
        g = multiplicative_generator(F)
        exp = np.empty(max(q - 1, 1), dtype=np.int64)
        x = F.one
        for k in range(q - 1):
            exp[k] = x.code
            x = x * g
        log = np.full(q, -1, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        codes = np.arange(q)
        self.digits = np.stack([(codes // F.p**i) % F.p for i in range(F.n)], axis=1)
        self.exp = exp
        self.log = log
        for arr in (self.exp, self.log, self.digits):
            arr.flags.writeable = False
