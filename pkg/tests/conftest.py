import itertools

import pytest

from zetalab.variety import VarietySpec


def brute_force_projective(V: VarietySpec, q_elements, zero, one):
    """Count projective points on the cone: all nonzero tuples that vanish, divided by q - 1."""
    k = V.nvars
    cone = 0
    for pt in itertools.product(q_elements, repeat=k):
        if all(c == zero for c in pt):
            continue
        if all(_eval(poly, pt, zero, one) == zero for poly in V.polys):
            cone += 1
    assert cone % (len(q_elements) - 1) == 0
    return cone // (len(q_elements) - 1)


def brute_force_affine(V: VarietySpec, q_elements, zero, one):
    return sum(
        all(_eval(poly, pt, zero, one) == zero for poly in V.polys)
        for pt in itertools.product(q_elements, repeat=V.nvars)
    )


def _eval(poly, pt, zero, one):
    total = zero
    for c, exps in poly:
        term = one * c
        for x, e in zip(pt, exps):
            term = term * x**e if e else term
        total = total + term
    return total


@pytest.fixture
def data_dir(request):
    from pathlib import Path

    return Path(request.config.rootpath) / "examples_data"


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
