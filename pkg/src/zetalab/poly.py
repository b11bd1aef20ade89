"""Dense univariate polynomials over Q as tuples of Fractions, constant term first."""

from __future__ import annotations

from fractions import Fraction


def trim(a) -> tuple:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def as_fractions(a) -> tuple:
    return trim(Fraction(x) for x in a)


def degree(a) -> int:
    a = trim(a)
    return len(a) - 1  # -1 for the zero polynomial


def add(a, b) -> tuple:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def sub(a, b) -> tuple:
    return add(a, scale(b, -1))


def scale(a, c) -> tuple:
    return trim(c * x for x in a)


def mul(a, b) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a, b):
    a, b = list(trim(a)), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db, lead = len(b) - 1, Fraction(b[-1])
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] / lead
        shift = len(a) - 1 - db
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = list(trim(a))
    return trim(q), trim(a)


def gcd(a, b) -> tuple:
    """Monic gcd over Q."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    if not a:
        return ()
    return scale(a, Fraction(1) / Fraction(a[-1]))


def evaluate(a, x):
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


def power(a, e: int) -> tuple:
    out = (1,)
    for _ in range(e):
        out = mul(out, a)
    return out


def series_mul(a, b, order: int) -> tuple:
    """Product of two power series, coefficients 0..order."""
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return tuple(out)


def series_inverse(a, order: int) -> tuple:
    if not a or a[0] == 0:
        raise ZeroDivisionError("power series with zero constant term")
    inv0 = Fraction(1) / Fraction(a[0])
    out = [inv0]
    for k in range(1, order + 1):
        s = sum((a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out.append(-s * inv0)
    return tuple(out)


def to_str(a, var: str = "t") -> str:
    a = trim(a)
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if (i == 0 or mag != 1) else ""
        if body and mono:
            body += "*"
        parts.append(("-" if c < 0 else "+", body + mono))
    s = "".join(f" {sg} {b}" for sg, b in parts).strip()
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
