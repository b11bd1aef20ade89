"""Elementary integer arithmetic: primality, sieves, multiplicative functions."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

SIEVE_CAP = 10**7

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization, {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int):
    """Return (p, k) if n = p**k with k >= 1, else None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    return next(iter(f.items()))


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def multiplicative_order(a: int, m: int) -> int:
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit mod {m}")
    if m == 1:
        return 1
    order = euler_phi(m)
    for p in factorize(order):
        while order % p == 0 and pow(a, order // p, m) == 1:
            order //= p
    return order


@lru_cache(maxsize=8)
def prime_sieve(limit: int) -> np.ndarray:
    """Eratosthenes: boolean array ``s`` with ``s[k]`` true iff k is prime."""
    if limit > SIEVE_CAP:
        raise ValueError(f"sieve limit {limit} exceeds cap {SIEVE_CAP}")
    s = np.ones(max(limit + 1, 2), dtype=bool)
    s[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if s[p]:
            s[p * p :: p] = False
    s.flags.writeable = False
    return s


def primes_upto(limit: int) -> np.ndarray:
    return np.flatnonzero(prime_sieve(limit))


def smallest_prime_factor(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            block = spf[p::p]
            block[block == 0] = p
    return spf


def mobius_table(limit: int) -> np.ndarray:
    """mu(0..limit) by a linear pass over smallest prime factors (mu[0] = 0)."""
    spf = smallest_prime_factor(limit)
    mu = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        mu[1] = 1
    for n in range(2, limit + 1):
        p = spf[n]
        m = n // p
        mu[n] = 0 if m % p == 0 else -mu[m]
    return mu


def mangoldt_table(limit: int) -> list:
    """Entry n is the prime p when n = p**k (k >= 1), else None."""
    spf = smallest_prime_factor(limit)
    out: list = [None] * (limit + 1)
    for n in range(2, limit + 1):
        p = int(spf[n])
        m = n
        while m % p == 0:
            m //= p
        if m == 1:
            out[n] = p
    return out
