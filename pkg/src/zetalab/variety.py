"""Varieties over a prime field, given by integer-coefficient polynomials.

A polynomial is stored as a tuple of ``(coefficient, exponent-vector)``
terms with coefficients reduced into ``[1, p)``.  Text input follows the
grammar ``c*x^e*y^f`` with terms joined by ``+``/``-``; ``*`` may be
omitted between a coefficient and a variable, ``^e`` may be omitted for
exponent 1.  The JSON file format is::

    {"p": 2, "vars": ["x", "y", "z"], "projective": true,
     "polys": ["y^2*z + y*z^2 - x^3"]}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .arith import is_prime
from .errors import NonHomogeneous, NotPrime, ParseError

Term = tuple[int, tuple[int, ...]]
Poly = tuple[Term, ...]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


class _PolyParser:
    def __init__(self, text: str, var_names):
        self.text = text
        self.index = {v: i for i, v in enumerate(var_names)}
        self.nvars = len(var_names)
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r} in {text!r}", 1, pos + 1)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def _error(self, msg):
        raise ParseError(f"{msg} in {self.text!r}", 1, self._peek()[2] + 1)

    def parse(self) -> dict[tuple[int, ...], int]:
        acc: dict[tuple[int, ...], int] = {}
        if not self.tokens:
            self._error("empty polynomial")
        sign = 1
        kind, val, _ = self._peek()
        if (kind, val) in (("op", "+"), ("op", "-")):
            sign = -1 if val == "-" else 1
            self.i += 1
        while True:
            coeff, exps = self._term()
            acc[exps] = acc.get(exps, 0) + sign * coeff
            kind, val, _ = self._peek()
            if kind is None:
                return acc
            if (kind, val) not in (("op", "+"), ("op", "-")):
                self._error(f"expected '+' or '-', got {val!r}")
            sign = -1 if val == "-" else 1
            self.i += 1

    def _term(self):
        coeff = 1
        exps = [0] * self.nvars
        expect_factor = True
        seen = False
        while True:
            kind, val, _ = self._peek()
            if kind == "num":
                if not expect_factor:
                    self._error("missing operator before number")
                coeff *= int(val)
                self.i += 1
            elif kind == "name":
                if val not in self.index:
                    self._error(f"unknown variable {val!r}")
                self.i += 1
                e = 1
                if self._peek()[:2] == ("op", "^"):
                    self.i += 1
                    k2, v2, _ = self._peek()
                    if k2 != "num":
                        self._error("expected integer exponent after '^'")
                    e = int(v2)
                    self.i += 1
                exps[self.index[val]] += e
            else:
                if not seen:
                    self._error("expected a term")
                return coeff, tuple(exps)
            seen = True
            kind, val, _ = self._peek()
            if (kind, val) == ("op", "*"):
                self.i += 1
                expect_factor = True
                if self._peek()[0] not in ("num", "name"):
                    self._error("expected a factor after '*'")
            elif kind == "name":
                expect_factor = True  # implicit product such as 3x or x y
            else:
                expect_factor = False
                if kind == "num":
                    self._error("missing operator before number")


def parse_polynomial(text: str, var_names, p: int) -> Poly:
    """Parse ``text`` and reduce coefficients mod ``p``; zero terms are dropped."""
    raw = _PolyParser(text, list(var_names)).parse()
    terms = [(c % p, e) for e, c in raw.items() if c % p]
    return tuple(sorted(terms, key=lambda t: t[1]))


def is_homogeneous(poly: Poly) -> bool:
    return len({sum(e) for _, e in poly}) <= 1


@dataclass(frozen=True)
class VarietySpec:
    p: int
    var_names: tuple[str, ...]
    projective: bool
    polys: tuple[Poly, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if not self.var_names:
            raise ValueError("a variety needs at least one variable")
        if self.projective:
            for i, poly in enumerate(self.polys):
                if not is_homogeneous(poly):
                    raise NonHomogeneous(f"polynomial #{i} is not homogeneous")

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @classmethod
    def from_strings(cls, p: int, var_names, polys, projective: bool = False) -> VarietySpec:
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        var_names = tuple(var_names)
        return cls(p, var_names, projective, tuple(parse_polynomial(s, var_names, p) for s in polys))

    @classmethod
    def from_json(cls, text: str) -> VarietySpec:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
        if not isinstance(obj, dict):
            raise ParseError("variety file must hold a JSON object", 1, 1)
        missing = {"p", "vars", "polys"} - obj.keys()
        if missing:
            raise ParseError(f"missing keys: {sorted(missing)}", 1, 1)
        p, names, polys = obj["p"], obj["vars"], obj["polys"]
        if not isinstance(p, int) or not isinstance(names, list) or not isinstance(polys, list):
            raise ParseError("'p' must be an integer, 'vars' and 'polys' lists", 1, 1)
        try:
            return cls.from_strings(p, names, polys, bool(obj.get("projective", False)))
        except ParseError as exc:
            # relocate the error from the polynomial string into the file
            line, col = _locate(text, polys, exc)
            raise ParseError(str(exc).split(" (line")[0], line, col) from None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "vars": list(self.var_names),
            "projective": self.projective,
            "polys": [format_polynomial(f, self.var_names) for f in self.polys],
        }


def _locate(text, polys, exc):
    for s in polys:
        if isinstance(s, str) and repr(s) in str(exc):
            start = text.find(json.dumps(s))
            if start >= 0:
                offset = start + 1 + (exc.column or 1) - 1
                line = text.count("\n", 0, offset) + 1
                col = offset - (text.rfind("\n", 0, offset) + 1) + 1
                return line, col
    return exc.line, exc.column


def load_variety(path) -> VarietySpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return VarietySpec.from_json(text)


def format_polynomial(poly: Poly, var_names) -> str:
    if not poly:
        return "0"
    parts = []
    for c, e in poly:
        factors = [] if c == 1 and any(e) else [str(c)]
        for name, k in zip(var_names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        parts.append("*".join(factors))
    return " + ".join(parts)
