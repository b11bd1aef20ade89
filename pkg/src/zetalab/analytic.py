"""The Riemann zeta function and the primes.

Special values from Bernoulli numbers, numerical evaluation (accelerated
alternating series for Re(s) > 0, the functional equation for Re(s) <= 0),
sieve tables of pi, psi, mu and the von Mangoldt function, the explicit
formula for psi_0 over tabulated zeros, and von Koch's inequality.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np
from scipy import integrate

from .arith import SIEVE_CAP, mobius_table, prime_sieve
from .errors import BelowThreshold, InsufficientZeros, PoleAtOne

ZEROS_ENV = "ZETALAB_ZEROS"
VON_KOCH_THRESHOLD = 2657

# ---------------------------------------------------------------------------
# Bernoulli numbers and special values


@lru_cache(maxsize=None)
def _bernoulli_list(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for k in range(1, n + 1):
        s = sum((math.comb(k + 1, j) * B[j] for j in range(k)), Fraction(0))
        B.append(-s / (k + 1))
    return tuple(B)


def bernoulli(n: int) -> Fraction:
    """B_n from sum_{k<=n} C(n+1, k) B_k = 0, so B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _bernoulli_list(n)[n]


def zeta_even(n: int) -> float:
    """zeta(2n) = (-1)^(n+1) B_2n (2 pi)^2n / (2 (2n)!)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    B = bernoulli(2 * n)
    return float((-1) ** (n + 1) * B * Fraction(1, 2 * math.factorial(2 * n))) * (2 * math.pi) ** (2 * n)


def zeta_negative(n: int) -> Fraction:
    """zeta(-n) = -B_(n+1) / (n+1) for n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return -bernoulli(n + 1) / (n + 1)


def zeta_zero() -> Fraction:
    return Fraction(-1, 2)


# ---------------------------------------------------------------------------
# Gamma (Lanczos, g = 7, nine coefficients)

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma(z: complex) -> complex:
    z = complex(z)
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma(1 - z))
    z -= 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.sqrt(2 * cmath.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


# ---------------------------------------------------------------------------
# zeta(s)


@lru_cache(maxsize=None)
def _borwein_weights(n: int) -> tuple[float, ...]:
    d = []
    acc = 0
    for i in range(n + 1):
        acc += Fraction(math.factorial(n + i - 1) * 4**i, math.factorial(n - i) * math.factorial(2 * i))
        d.append(n * acc)
    dn = d[-1]
    return tuple(float((d[k] - dn) / dn) for k in range(n))


def eta(s: complex, terms: int | None = None) -> complex:
    """Alternating series sum (-1)^(n-1) n^-s, Re(s) > 0, via Borwein's acceleration."""
    s = complex(s)
    n = terms or 40 + int(1.5 * abs(s.imag))
    w = _borwein_weights(n)
    total = 0j
    for k in range(n):
        term = w[k] * cmath.exp(-s * math.log(k + 1))
        total += term if k % 2 == 0 else -term
    return -total


def zeta_eval(s: complex) -> complex:
    """zeta(s) for s != 1.

    Re(s) > 0: zeta(s) = eta(s) / (1 - 2^(1-s)).  Re(s) <= 0: with u = 1 - s,
    zeta(1 - u) = 2 (2 pi)^-u cos(pi u / 2) Gamma(u) zeta(u).
    """
    s = complex(s)
    if s == 1:
        raise PoleAtOne("zeta has a pole at s = 1")
    if s.real > 0:
        return eta(s) / (1 - 2 ** (1 - s))
    if s == 0:
        return complex(zeta_zero())  # removable: cos(pi u/2) zeta(u) at u = 1
    u = 1 - s
    return 2 * (2 * cmath.pi) ** (-u) * cmath.cos(cmath.pi * u / 2) * gamma(u) * zeta_eval(u)


# ---------------------------------------------------------------------------
# sieve tables


@dataclass(frozen=True)
class ArithmeticTables:
    """Index k of each array refers to the integer k (0 <= k <= X)."""

    X: int
    pi: np.ndarray
    psi: np.ndarray
    mu: np.ndarray
    mangoldt: np.ndarray

    def prime_pi(self, x: float) -> int:
        return int(self.pi[self._idx(x)])

    def chebyshev_psi(self, x: float) -> float:
        return float(self.psi[self._idx(x)])

    def psi0(self, x: float) -> float:
        """Midpoint value: psi(x) - lambda(x)/2 at prime powers."""
        v = self.chebyshev_psi(x)
        if float(x).is_integer():
            v -= float(self.mangoldt[int(x)]) / 2
        return v

    def _idx(self, x):
        k = math.floor(x)
        if k > self.X:
            raise ValueError(f"{x} exceeds table size {self.X}")
        return max(k, 0)


@lru_cache(maxsize=4)
def arithmetic_tables(X: int) -> ArithmeticTables:
    if X > SIEVE_CAP:
        raise ValueError(f"X = {X} exceeds the sieve cap {SIEVE_CAP}")
    X = max(X, 2)
    is_p = prime_sieve(X)
    lam = np.zeros(X + 1)
    for p in np.flatnonzero(is_p):
        p = int(p)
        lp = math.log(p)
        pk = p
        while pk <= X:
            lam[pk] = lp
            pk *= p
    pi = np.cumsum(is_p, dtype=np.int64)
    return ArithmeticTables(X, pi, np.cumsum(lam), mobius_table(X), lam)


# ---------------------------------------------------------------------------
# zeros and the explicit formula


@dataclass(frozen=True)
class ZeroTable:
    ordinates: tuple[float, ...]

    def __post_init__(self):
        g = self.ordinates
        if any(x <= 0 for x in g) or any(b <= a for a, b in zip(g, g[1:])):
            raise ValueError("zero ordinates must be positive and strictly ascending")

    def __len__(self):
        return len(self.ordinates)


def load_zeros(path=None) -> ZeroTable:
    """Zero ordinates from ``path``, $ZETALAB_ZEROS, or the bundled table (first 100)."""
    path = path or os.environ.get(ZEROS_ENV)
    if path:
        text = Path(path).read_text()
    else:
        text = resources.files("zetalab").joinpath("data/zeta_zeros.txt").read_text()
    vals = [float(line) for line in text.split() if line.strip()]
    return ZeroTable(tuple(vals))


def explicit_formula_psi(x: float, zeros: ZeroTable, K: int) -> float:
    """x - log(2 pi) - log(1 - x^-2)/2 - sum over the first K conjugate pairs of 2 Re(x^rho / rho).

    The constant is Z(0) = -zeta'(0)/zeta(0) = -log(2 pi).
    """
    if x <= 1:
        raise ValueError("explicit formula needs x > 1")
    if K > len(zeros):
        raise InsufficientZeros(f"asked for {K} zeros, table has {len(zeros)}")
    val = x - math.log(2 * math.pi) - 0.5 * math.log(1 - x**-2)
    if K:
        rho = 0.5 + 1j * np.asarray(zeros.ordinates[:K])
        val -= float(np.sum(2 * (np.exp(rho * math.log(x)) / rho).real))
    return val


# ---------------------------------------------------------------------------
# logarithmic integral and von Koch


def _li_kernel(t):
    # (t - 1) / log t, extended continuously at t = 0 and t = 1
    if t == 1:
        return 1.0
    if t <= 0:
        return 0.0
    return (t - 1) / math.log(t)


def log_integral(x: float) -> float:
    """li(x) = PV int_0^x dt / log t, by quadrature.

    The singular part int_0^2 is a Cauchy principal value at t = 1, taken
    with the weight 1/(t - 1); the rest is a plain integral from 2 to x.
    """
    if x <= 0:
        raise ValueError("li needs x > 0")
    if x < 2:
        if x == 1:
            return -math.inf
        if x < 1:
            return integrate.quad(lambda t: 1 / math.log(t) if t > 0 else 0.0, 0, x, limit=200)[0]
        pv = integrate.quad(_li_kernel, 0, x, weight="cauchy", wvar=1.0)[0]
        return pv
    pv = integrate.quad(_li_kernel, 0, 2, weight="cauchy", wvar=1.0)[0]
    rest = integrate.quad(lambda t: 1 / math.log(t), 2, x, limit=500, epsabs=1e-10, epsrel=1e-12)[0]
    return pv + rest


@dataclass(frozen=True)
class VonKochResult:
    x: float
    lhs: float
    rhs: float

    @property
    def passed(self) -> bool:
        return self.lhs < self.rhs


def von_koch_check(x: float) -> VonKochResult:
    """|pi(x) - li(x)| against sqrt(x) log(x) / (8 pi), for x >= 2657."""
    if x < VON_KOCH_THRESHOLD:
        raise BelowThreshold(f"von Koch bound applies for x >= {VON_KOCH_THRESHOLD}")
    tabs = arithmetic_tables(int(math.floor(x)))
    lhs = abs(tabs.prime_pi(x) - log_integral(x))
    rhs = math.sqrt(x) * math.log(x) / (8 * math.pi)
    return VonKochResult(float(x), lhs, rhs)
