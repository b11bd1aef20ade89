"""Elliptic curves y^2 = x^3 + a x + b over Q: traces of Frobenius and partial L-products."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import is_prime, primes_upto
from .errors import BadReduction, DivergentRegion, SingularCurve
from .variety import VarietySpec


@dataclass(frozen=True)
class EllipticCurveQ:
    a: int
    b: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise SingularCurve(f"y^2 = x^3 + {self.a}x + {self.b} is singular")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def projective_model(self, p: int) -> VarietySpec:
        """y^2 z = x^3 + a x z^2 + b z^3 over F_p, for the generic point counter."""
        return VarietySpec.from_strings(
            p, ("x", "y", "z"), [f"y^2*z - x^3 - {self.a % p}*x*z^2 - {self.b % p}*z^3"], projective=True
        )

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b}"


def good_reduction(E: EllipticCurveQ, p: int) -> bool:
    """p > 3 and p does not divide the discriminant of this model."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p > 3 and E.discriminant % p != 0


@lru_cache(maxsize=None)
def _square_counts(p: int) -> np.ndarray:
    """Entry v is the number of y in F_p with y^2 = v."""
    counts = np.zeros(p, dtype=np.int64)
    np.add.at(counts, (np.arange(p, dtype=np.int64) ** 2) % p, 1)
    return counts


def count_points_fp(E: EllipticCurveQ, p: int) -> int:
    """|E(F_p)| including the point at infinity."""
    x = np.arange(p, dtype=np.int64)
    rhs = (x * x % p * x + E.a * x + E.b) % p
    return 1 + int(_square_counts(p)[rhs].sum())


def trace_ap(E: EllipticCurveQ, p: int) -> int:
    """a_p = p + 1 - |E(F_p)| at a prime of good reduction."""
    if not good_reduction(E, p):
        raise BadReduction(f"{E} has bad reduction (or p <= 3) at p = {p}")
    return p + 1 - count_points_fp(E, p)


@dataclass(frozen=True)
class LocalFactor:
    p: int
    ap: int

    @property
    def poly(self) -> tuple[int, int, int]:
        """1 - a_p t + p t^2, constant term first."""
        return (1, -self.ap, self.p)

    def roots(self) -> tuple[complex, complex]:
        disc = cmath.sqrt(self.ap**2 - 4 * self.p)
        return ((self.ap + disc) / (2 * self.p), (self.ap - disc) / (2 * self.p))

    def frobenius_eigenvalues(self) -> tuple[complex, complex]:
        """alpha, conj(alpha) with 1 - a_p t + p t^2 = (1 - alpha t)(1 - conj(alpha) t)."""
        return tuple(1 / r for r in self.roots())

    def count_over_extension(self, n: int) -> int:
        """|E(F_{p^n})| = p^n + 1 - (alpha^n + conj(alpha)^n), via the integer recurrence."""
        if n < 1:
            raise ValueError("n must be >= 1")
        s_prev, s = 2, self.ap  # alpha^k + conj^k for k = 0, 1
        for _ in range(n - 1):
            s_prev, s = s, self.ap * s - self.p * s_prev
        return self.p**n + 1 - s


def local_factor(E: EllipticCurveQ, p: int) -> LocalFactor:
    return LocalFactor(p, trace_ap(E, p))


def partial_l(E: EllipticCurveQ, s: complex, P: int) -> complex:
    """prod over good p <= P of (1 - a_p p^-s + p^(1-2s))^-1; bad primes are left out."""
    s = complex(s)
    if s.real <= 1.5:
        raise DivergentRegion(f"Euler product needs Re(s) > 3/2, got {s.real}")
    out = 1 + 0j
    for p in primes_upto(P):
        p = int(p)
        if not good_reduction(E, p):
            continue
        ap = trace_ap(E, p)
        out /= 1 - ap * p ** (-s) + p ** (1 - 2 * s)
    return out


def ap_table(E: EllipticCurveQ, upto: int) -> list[tuple[int, int | None, bool]]:
    """(p, a_p, good) for primes p <= upto; a_p is None at bad primes."""
    rows = []
    for p in primes_upto(upto):
        p = int(p)
        good = good_reduction(E, p)
        rows.append((p, trace_ap(E, p) if good else None, good))
    return rows


def hasse_bound_holds(ap: int, p: int) -> bool:
    return ap * ap <= 4 * p


__all__ = [
    "EllipticCurveQ",
    "LocalFactor",
    "good_reduction",
    "trace_ap",
    "count_points_fp",
    "local_factor",
    "partial_l",
    "ap_table",
    "hasse_bound_holds",
]
