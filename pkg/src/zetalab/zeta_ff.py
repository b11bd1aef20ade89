"""Zeta functions of varieties over finite fields, from point counts.

Z(X, t) = exp(sum nu_n t^n / n) is built exactly from the counts
nu_n = |X(F_{q^n})|, recovered as a rational function by exact linear
algebra, and then checked for the functional equation, the Riemann
hypothesis (root moduli q^{-w/2}) and the Hasse-Weil point bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import poly as P_
from .arith import divisors, mobius
from .counting import PointCounts
from .errors import (
    InconsistentCounts,
    InsufficientCounts,
    NoFunctionalEquation,
    NoRecurrence,
    NotACurveZeta,
)

RH_TOL = 1e-6


def _counts(counts) -> tuple[int, ...]:
    return tuple(counts.counts) if isinstance(counts, PointCounts) else tuple(counts)


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple  # coefficient of t^n at index n

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_nonnegative_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 and c >= 0 for c in self.coeffs)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        M = min(self.order, other.order)
        return TruncatedSeries(P_.series_mul(self.coeffs, other.coeffs, M))


@dataclass(frozen=True)
class RationalFunction:
    """P/Q with gcd(P, Q) = 1 and Q(0) = 1; construction normalizes."""

    P: tuple
    Q: tuple

    def __post_init__(self):
        num, den = P_.as_fractions(self.P), P_.as_fractions(self.Q)
        if not den or den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        g = P_.gcd(num, den) if num else (Fraction(1),)
        if len(g) > 1:
            num, den = P_.divmod_(num, g)[0], P_.divmod_(den, g)[0]
        c = den[0]
        object.__setattr__(self, "P", P_.scale(num, 1 / c))
        object.__setattr__(self, "Q", P_.scale(den, 1 / c))

    def expand(self, M: int) -> TruncatedSeries:
        return TruncatedSeries(P_.series_mul(self.P, P_.series_inverse(self.Q, M), M))

    def __call__(self, t):
        return P_.evaluate(self.P, t) / P_.evaluate(self.Q, t)

    def __str__(self):
        return f"({P_.to_str(self.P)}) / ({P_.to_str(self.Q)})"


# ---------------------------------------------------------------------------


def zeta_series_from_counts(counts, M: int) -> TruncatedSeries:
    """Coefficients b_0..b_M of exp(sum nu_n t^n / n); n b_n = sum_k nu_k b_{n-k}."""
    nu = _counts(counts)
    if len(nu) < M:
        raise InsufficientCounts(f"need {M} counts, got {len(nu)}")
    b = [Fraction(1)]
    for n in range(1, M + 1):
        s = sum((nu[k - 1] * b[n - k] for k in range(1, n + 1)), Fraction(0))
        b.append(s / n)
    return TruncatedSeries(tuple(int(x) if x.denominator == 1 else x for x in b))


def closed_point_spectrum(counts) -> tuple[int, ...]:
    """Number a_d of closed points of degree d, from nu_n = sum_{d|n} d a_d."""
    nu = _counts(counts)
    out = []
    for d in range(1, len(nu) + 1):
        s = sum(mobius(d // e) * nu[e - 1] for e in divisors(d))
        a, r = divmod(s, d)
        if r or a < 0:
            raise InconsistentCounts(
                f"counts {list(nu)} give a_{d} = {Fraction(s, d)}: not a nonnegative integer"
            )
        out.append(a)
    return tuple(out)


# ---------------------------------------------------------------------------
# exact linear algebra


def solve_exact(A, b):
    """One solution of A x = b over Q (free variables set to 0), or None."""
    rows = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][-1]
    return x


def rational_reconstruct(S, degP: int, degQ: int) -> RationalFunction:
    """P/Q with deg P <= degP, deg Q <= degQ, Q(0) = 1 and P/Q = S to the full truncation.

    Searches degQ first, then degP, in increasing order so the answer has
    minimal denominator degree.  Needs at least degP + degQ + 2 coefficients.
    """
    s = list(S.coeffs if isinstance(S, TruncatedSeries) else S)
    M = len(s) - 1
    if M < degP + degQ + 1:
        raise NoRecurrence(
            f"{M + 1} coefficients cannot determine and verify degrees ({degP}, {degQ}); "
            f"need {degP + degQ + 2}"
        )
    coef = lambda k: s[k] if k >= 0 else 0  # noqa: E731
    for dq in range(degQ + 1):
        for dp in range(degP + 1):
            # sum_{i=1}^{dq} q_i s_{j-i} = -s_j   for dp < j <= M
            A = [[coef(j - i) for i in range(1, dq + 1)] for j in range(dp + 1, M + 1)]
            b = [-coef(j) for j in range(dp + 1, M + 1)]
            if dq == 0:
                sol = [] if all(x == 0 for x in b) else None
            else:
                sol = solve_exact(A, b)
            if sol is None:
                continue
            Q = (Fraction(1), *sol)
            Pc = P_.series_mul(Q, s, M)[: dp + 1]
            return RationalFunction(Pc, Q)
    raise NoRecurrence(f"no P/Q with deg P <= {degP}, deg Q <= {degQ} matches {M + 1} coefficients")


# ---------------------------------------------------------------------------
# curves


def curve_numerator(counts, q: int, g: int) -> tuple[int, ...]:
    """P(t) = (1 - t)(1 - qt) Z(C, t), an integer polynomial of degree 2g."""
    nu = _counts(counts)
    if len(nu) < 2 * g:
        raise InsufficientCounts(f"genus {g} needs {2 * g} counts, got {len(nu)}")
    L = len(nu)
    Z = zeta_series_from_counts(nu, L)
    prod = P_.series_mul((1, -(q + 1), q), Z.coeffs, L)
    num, tail = prod[: 2 * g + 1], prod[2 * g + 1 :]
    if any(c != 0 for c in tail):
        raise NotACurveZeta(f"(1-t)(1-qt)Z has nonzero coefficients beyond degree {2 * g}")
    if any(Fraction(c).denominator != 1 for c in num):
        raise NotACurveZeta(f"non-integral numerator {num}")
    num = tuple(int(c) for c in num)
    for i in range(g + 1):
        if num[2 * g - i] != q ** (g - i) * num[i]:
            raise NotACurveZeta(f"coefficients {num} violate a_(2g-i) = q^(g-i) a_i at i={i}")
    return num


def curve_zeta(counts, q: int, g: int) -> RationalFunction:
    return RationalFunction(curve_numerator(counts, q, g), (1, -(q + 1), q))


# ---------------------------------------------------------------------------
# functional equation


@dataclass(frozen=True)
class FunctionalEquation:
    sign: int
    chi: int
    residual: float = 0.0


def functional_equation_check(Z: RationalFunction, q: int, n: int) -> FunctionalEquation:
    """Find sign and chi with Z(1/(q^n t)) = sign * q^(n chi / 2) (-t)^chi Z(t), exactly.

    Writing P~(t) = t^deg P * P(1/(q^n t)) (and Q~ likewise) the identity is
    P~ Q = C Q~ P with C = sign (-1)^chi q^(n chi/2) and chi = deg Q - deg P.
    """
    Pn, Qd = Z.P, Z.Q
    if not Pn:
        raise NoFunctionalEquation("zero function")
    qn = Fraction(q) ** n
    Pt = tuple(reversed([c / qn**i for i, c in enumerate(Pn)]))
    Qt = tuple(reversed([c / qn**i for i, c in enumerate(Qd)]))
    chi = len(Qd) - len(Pn)
    lhs, rhs = P_.mul(Pt, Qd), P_.mul(Qt, Pn)
    C = lhs[-1] / rhs[-1]
    diff = P_.sub(lhs, P_.scale(rhs, C))
    residual = float(max((abs(c) for c in diff), default=0))
    if residual:
        raise NoFunctionalEquation(f"Z(1/(q^n t)) is not a monomial multiple of Z(t): residual {residual:.3g}", residual)
    target = qn**chi
    if C * C != target:
        residual = float(abs(C * C - target))
        raise NoFunctionalEquation(f"constant {C} is not +-q^(n chi/2) with chi={chi}", residual)
    sign = (1 if C > 0 else -1) * (-1) ** (chi % 2)
    return FunctionalEquation(sign, chi, 0.0)


# ---------------------------------------------------------------------------
# Riemann hypothesis


def polynomial_roots(coeffs) -> np.ndarray:
    """Complex roots of sum c_i t^i: companion-matrix eigenvalues, Newton-polished."""
    c = [float(x) for x in P_.trim(coeffs)]
    if len(c) <= 1:
        return np.zeros(0, dtype=complex)
    hi = np.array(c[::-1], dtype=float)
    roots = np.roots(hi).astype(complex)  # LAPACK geev balances the companion matrix
    d1 = np.polyder(hi)
    for _ in range(8):
        f, fp = np.polyval(hi, roots), np.polyval(d1, roots)
        ok = fp != 0
        roots[ok] = roots[ok] - f[ok] / fp[ok]
    return roots


@dataclass
class RHReport:
    passed: bool
    max_modulus_error: float
    roots: list = field(default_factory=list)
    weights: list = field(default_factory=list)


def riemann_hypothesis_check(Pc, q: int, w: int) -> RHReport:
    """Every root t_j of P satisfies |t_j| = q^(-w/2), within RH_TOL relative."""
    roots = polynomial_roots(Pc)
    errs = [abs(abs(r) * q ** (w / 2) - 1) for r in roots]
    worst = max(errs, default=0.0)
    return RHReport(bool(worst < RH_TOL), float(worst), [complex(r) for r in roots], [w] * len(roots))


def classify_weights(Pc, q: int):
    """For each root t, the integer i closest to -2 log|t| / log q and the modulus error."""
    out = []
    for r in polynomial_roots(Pc):
        i = round(-2 * math.log(abs(r)) / math.log(q))
        out.append((complex(r), i, abs(abs(r) * q ** (i / 2) - 1)))
    return out


@dataclass
class WeilReport:
    chi: int | None
    sign: int | None
    rh_pass: bool
    max_modulus_error: float
    weights: list
    roots: list
    fe_residual: float | None = None


def weil_report(Z: RationalFunction, q: int, dim: int) -> WeilReport:
    """Functional equation plus weight classification of every zero and pole."""
    try:
        fe = functional_equation_check(Z, q, dim)
        chi, sign, resid = fe.chi, fe.sign, None
    except NoFunctionalEquation as exc:
        chi, sign, resid = None, None, exc.residual
    classes = classify_weights(Z.P, q) + classify_weights(Z.Q, q)
    worst = max((e for _, _, e in classes), default=0.0)
    return WeilReport(
        chi, sign, bool(worst < RH_TOL), float(worst), [i for _, i, _ in classes], [r for r, _, _ in classes], resid
    )


def curve_weil_report(counts, q: int, g: int) -> WeilReport:
    """Curve case: numerator of weight 1, functional equation with chi = 2 - 2g."""
    Z = curve_zeta(counts, q, g)
    fe = functional_equation_check(Z, q, 1)
    rh = riemann_hypothesis_check(curve_numerator(counts, q, g), q, 1)
    return WeilReport(fe.chi, fe.sign, rh.passed, rh.max_modulus_error, rh.weights, rh.roots)


# ---------------------------------------------------------------------------
# point bound


@dataclass
class PointBoundReport:
    passed: bool
    margins: list  # (n, 1 + q^n - nu_n, 2 g q^(n/2))
    worst_margin: float


def weil_point_bound_check(counts, q: int, g: int) -> PointBoundReport:
    """|1 + q^n - nu_n| <= 2 g q^(n/2) for every n; decided in exact integers."""
    nu = _counts(counts)
    margins = []
    ok = True
    for n, v in enumerate(nu, start=1):
        dev = 1 + q**n - v
        ok &= dev * dev <= 4 * g * g * q**n
        margins.append((n, dev, 2 * g * q ** (n / 2)))
    worst = min((b - abs(d) for _, d, b in margins), default=math.inf)
    return PointBoundReport(bool(ok), margins, worst)

