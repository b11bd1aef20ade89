import cmath
import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_affine, brute_force_projective
from zetalab.counting import (
    MultCharTable,
    count_affine,
    count_diagonal_hypersurface,
    count_projective,
    count_sequence,
    diagonal_variety,
    jacobi_sum,
    jacobi_sum_multi,
)
from zetalab.errors import NonHomogeneous, ParseError, ZeroCoefficient
from zetalab.ffield import enumerate_elements, make_field
from zetalab.variety import VarietySpec, format_polynomial, parse_polynomial


def spec(p, names, polys, projective=False):
    return VarietySpec.from_strings(p, tuple(names), polys, projective=projective)


def brute(V, n=1):
    F = make_field(V.p, n)
    els = enumerate_elements(F)
    fn = brute_force_projective if V.projective else brute_force_affine
    return fn(V, els, F.zero, F.one)


# --- examples -------------------------------------------------------------


def test_affine_examples():
    assert count_affine(spec(2, "x", []), 3) == 8
    assert count_affine(spec(2, "xy", ["y^2 + y + x^3"])) == 2
    for n in (1, 2, 3):
        assert count_affine(spec(3, "xy", ["1"]), n) == 0


def test_projective_examples():
    assert count_projective(spec(3, "xy", [], True)) == 4
    assert count_projective(spec(2, "xyz", ["x^3 + y^3 + z^3"], True)) == 3
    V = spec(3, "xy", ["x^2 + y^2"], True)
    assert count_projective(V) == brute(V) == 0


def test_sequence_examples():
    assert count_sequence(spec(2, "x", []), 3).counts == (2, 4, 8)
    assert count_sequence(spec(2, "xy", [], True), 3).counts == (3, 5, 9)
    cubic = spec(2, "xyz", ["y^2*z + y*z^2 + x^3"], True)
    assert count_sequence(cubic, 2).counts == (3, 9)
    assert [brute(cubic, n) for n in (1, 2)] == [3, 9]


def test_non_homogeneous_rejected():
    with pytest.raises(NonHomogeneous):
        spec(2, "xy", ["x^2 + y"], True)


# --- enumeration vs brute force -----------------------------------------

VARIETIES = [
    spec(2, "xyz", ["y^2*z + y*z^2 + x^3"], True),
    spec(3, "xyz", ["x*y - z^2"], True),
    spec(5, "xy", ["y^2 - x^3 + x"]),
    spec(3, "xyz", ["x + y + z", "x*y"], True),
    spec(2, "xyz", ["x*y*z"]),
    spec(7, "xy", ["x^2 + y^2 - 1"]),
]


@pytest.mark.parametrize("V", VARIETIES, ids=lambda V: ",".join(map(str, V.polys))[:30])
@pytest.mark.parametrize("n", [1, 2])
def test_enumeration_matches_brute_force(V, n):
    if V.p**n > 9 and V.nvars == 3:
        pytest.skip("brute force too slow")
    assert count_points_any(V, n) == brute(V, n)


def count_points_any(V, n):
    return count_projective(V, n) if V.projective else count_affine(V, n)


def test_parallel_chunks_agree():
    V = spec(3, "xyzw", ["x^2 + y^2 + z^2 + w^2"], True)
    assert count_projective(V, 2, jobs=4) == count_projective(V, 2, jobs=1)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_projective_space_formula(p, n, k):
    if p**n > 9 and k == 3:
        pytest.skip("large enumeration")
    q = p**n
    V = spec(p, "abcd"[: k + 1], [], True)
    assert count_projective(V, n) == (q ** (k + 1) - 1) // (q - 1)


@pytest.mark.parametrize("V", [v for v in VARIETIES if not v.projective])
@pytest.mark.parametrize("n", [1, 2])
def test_product_with_line(V, n):
    # V x A^1: same equations, one extra free variable
    W = VarietySpec(V.p, V.var_names + ("t",), False, tuple(tuple((c, e + (0,)) for c, e in poly) for poly in V.polys))
    assert count_affine(W, n) == V.p**n * count_affine(V, n)


# --- characters and Jacobi sums -------------------------------------------


def test_jacobi_examples():
    F5 = make_field(5)
    quad = MultCharTable(F5, 2)
    J = jacobi_sum(quad, quad)
    # quad * quad is trivial, so J = -quad(-1) = -1; checked by the direct five-term sum
    direct = sum(quad(x) * quad(1 - x) for x in range(5))
    assert abs(direct - (-1)) < 1e-12
    assert abs(J - direct) < 1e-12
    quartic = MultCharTable(F5, 4)
    J4 = jacobi_sum(quartic, quartic)
    assert abs(abs(J4) - 5**0.5) < 1e-12
    triv = MultCharTable(F5, 4, 0)
    assert abs(jacobi_sum(triv, quartic) - (-1)) < 1e-12
    assert abs(jacobi_sum(triv, triv) - 3) < 1e-12


def test_quadratic_jacobi_magnitude_when_product_nontrivial():
    # over F_13 the quadratic and quartic characters have a nontrivial product
    F = make_field(13)
    chi2, chi4 = MultCharTable(F, 2), MultCharTable(F, 4)
    assert abs(abs(jacobi_sum(chi2, chi4)) - 13**0.5) < 1e-10


def direct_jacobi(chars, F):
    """Sum over x_1 + ... + x_l = 1 of prod chi_i(x_i), by enumeration."""
    els = enumerate_elements(F)
    total = 0j
    for xs in itertools.product(els, repeat=len(chars) - 1):
        last = F.one - sum(xs, F.zero)
        vals = list(xs) + [last]
        term = 1 + 0j
        for chi, x in zip(chars, vals):
            term *= chi(x)
        total += term
    return total


@pytest.mark.parametrize("p,n,e,powers", [(7, 1, 3, (1, 1, 1)), (7, 1, 6, (1, 2, 5)), (13, 1, 4, (1, 3, 2)), (2, 2, 3, (1, 1, 2)), (3, 2, 4, (1, 2, 3))])
def test_jacobi_multi_against_direct_sum(p, n, e, powers):
    F = make_field(p, n)
    chars = [MultCharTable(F, e, k) for k in powers]
    assert abs(jacobi_sum_multi(chars) - direct_jacobi(chars, F)) < 1e-9


def test_character_multiplicative():
    F = make_field(3, 2)
    chi = MultCharTable(F, 8)
    els = enumerate_elements(F)
    for a in els:
        for b in els:
            assert cmath.isclose(chi(a * b), chi(a) * chi(b), abs_tol=1e-12)
    assert chi(F.zero) == 0


def test_diagonal_examples():
    assert count_diagonal_hypersurface([1, 1], 2, make_field(5)) == 2
    assert count_diagonal_hypersurface([1, 1, 1], 3, make_field(2, 2)) == 9
    assert count_diagonal_hypersurface([1, 1, 1], 1, make_field(3)) == 4
    with pytest.raises(ZeroCoefficient):
        count_diagonal_hypersurface([1, 0, 1], 2, make_field(5))


def test_fermat_cubic_over_f4_by_enumeration():
    V = diagonal_variety([1, 1, 1], 3, 2)
    assert count_projective(V, 2) == brute(V, 2) == 9


DIAG_FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (2, 3), (3, 2), (2, 4)]


@pytest.mark.parametrize("p,n", DIAG_FIELDS)
def test_diagonal_matches_enumeration(p, n):
    rng = random.Random(p * 100 + n)
    F = make_field(p, n)
    for d in (1, 2, 3, 4):
        for r in (1, 2, 3):
            a = [rng.randrange(1, p) for _ in range(r + 1)]
            V = diagonal_variety(a, d, p)
            assert count_diagonal_hypersurface(a, d, F) == count_projective(V, n), (a, d)


# --- parser ------------------------------------------------------------


def test_parser_implicit_and_errors():
    assert parse_polynomial("3x^2y - y", ("x", "y"), 5) == parse_polynomial("3*x^2*y + 4*y^1", ("x", "y"), 5)
    with pytest.raises(ParseError) as err:
        parse_polynomial("x^2 + * y", ("x", "y"), 5)
    assert err.value.column is not None
    with pytest.raises(ParseError):
        parse_polynomial("x + w", ("x", "y"), 5)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=5))
def test_format_parse_round_trip(terms):
    text = " ".join(f"{'-' if c < 0 else '+'} {abs(c)}*x^{i}*y^{j}" for c, i, j in terms).lstrip("+ ")
    poly = parse_polynomial(text, ("x", "y"), 7)
    assert parse_polynomial(format_polynomial(poly, ("x", "y")) or "0", ("x", "y"), 7) == poly
