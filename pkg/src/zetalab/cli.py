"""``zetalab`` command line.

Every command prints one JSON envelope (or CSV with ``--format csv``)::

    {"command": "zeta", "arguments": {...}, "inputDigest": "<sha256>",
     "results": {...}, "version": "0.1.0"}

The digest covers the echoed arguments and the bytes of every input file,
so identical inputs give byte-identical output.

Exit status: 0 on success, 2 on domain errors, 1 on I/O and parse errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .analytic import (
    arithmetic_tables,
    explicit_formula_psi,
    load_zeros,
    von_koch_check,
    zeta_eval,
)
from .characters import (
    all_characters,
    character_table_csv,
    conductor,
    cyclotomic_zeta_factor,
    euler_factor_product_check,
    l_partial_eval,
    make_character,
    progression_density,
)
from .counting import PointCounts, count_sequence
from .errors import DomainError, InconsistentCounts, InsufficientCounts, ParseError
from .hasse_weil import EllipticCurveQ, ap_table, partial_l
from .variety import load_variety
from .zeta_ff import (
    closed_point_spectrum,
    curve_numerator,
    curve_zeta,
    rational_reconstruct,
    riemann_hypothesis_check,
    weil_point_bound_check,
    weil_report,
    zeta_series_from_counts,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _num(x):
    """JSON form of an exact rational: int when integral, else "p/q"."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _cplx(z) -> list[float]:
    return [_clean(z.real), _clean(z.imag)]


def _clean(v: float) -> float:
    v = float(v)
    return 0.0 if v == 0 else v  # no "-0.0" in reports


def _digest(args, files) -> str:
    h = hashlib.sha256()
    h.update(json.dumps(args, sort_keys=True, default=str).encode())
    for f in files:
        h.update(Path(f).read_bytes())
    return h.hexdigest()


def _emit(args, results, files=(), csv_text=None):
    out = sys.stdout
    if getattr(args, "format", "json") == "csv" and csv_text is not None:
        out.write(csv_text)
        return
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "jobs")}
    echo = json.loads(json.dumps(echo, default=str))
    envelope = {
        "command": args.command,
        "arguments": echo,
        "inputDigest": _digest(echo, files),
        "results": results,
        "version": __version__,
    }
    out.write(json.dumps(envelope, sort_keys=True, indent=2) + "\n")


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------


def cmd_count(args):
    V = load_variety(args.file)
    pc = count_sequence(V, args.upto, jobs=args.jobs)
    results = {"variety": V.to_json(), "q": pc.q, "counts": list(pc.counts)}
    try:
        results["closedPoints"] = list(closed_point_spectrum(pc))
        results["consistent"] = True
    except InconsistentCounts as exc:
        results["closedPoints"] = None
        results["consistent"] = False
        results["error"] = str(exc)
    _emit(args, results, [args.file], _csv(enumerate(pc.counts, 1), ["n", "count"]))
    return 0 if results["consistent"] else 2


def _zeta_input(args):
    if args.counts is not None:
        if args.q is None:
            raise ParseError("--counts needs --q")
        counts = tuple(int(c) for c in args.counts.split(",") if c.strip())
        return PointCounts(args.q, counts), None, []
    if args.file is None:
        raise ParseError("give a variety file or --counts")
    V = load_variety(args.file)
    if args.genus is not None:
        need = max(2 * args.genus, 1)
    else:
        need = sum(args.deg_bounds) + 1
    upto = args.upto if args.upto is not None else need
    return count_sequence(V, upto, jobs=args.jobs), V, [args.file]


def cmd_zeta(args):
    counts, V, files = _zeta_input(args)
    q = counts.q
    results = {"counts": list(counts.counts), "q": q}
    if args.genus is not None:
        g = args.genus
        P = curve_numerator(counts, q, g)
        Z = curve_zeta(counts, q, g)
        rep = weil_report(Z, q, 1)
        rh = riemann_hypothesis_check(P, q, 1)
        bound = weil_point_bound_check(counts, q, g)
        results["genus"] = g
        results["pointBound"] = {
            "pass": bound.passed,
            "margins": [[n, d, _clean(b)] for n, d, b in bound.margins],
        }
        rh_block = {
            "pass": rh.passed,
            "maxModulusError": _clean(rh.max_modulus_error),
            "roots": [_cplx(r) for r in rh.roots],
            "weights": rh.weights,
        }
    else:
        dP, dQ = args.deg_bounds
        if len(counts.counts) < dP + dQ + 1:
            raise InsufficientCounts(f"degree bounds ({dP}, {dQ}) need {dP + dQ + 1} counts")
        S = zeta_series_from_counts(counts, len(counts.counts))
        Z = rational_reconstruct(S, dP, dQ)
        dim = args.dim if args.dim is not None else _guess_dim(V)
        rep = weil_report(Z, q, dim)
        results["dimension"] = dim
        rh_block = {
            "pass": rep.rh_pass,
            "maxModulusError": _clean(rep.max_modulus_error),
            "roots": [_cplx(r) for r in rep.roots],
            "weights": rep.weights,
        }
    results["zeta"] = {"P": [_num(c) for c in Z.P], "Q": [_num(c) for c in Z.Q]}
    if rep.chi is None:
        results["functionalEquation"] = None
        results["functionalEquationResidual"] = _clean(rep.fe_residual or 0.0)
    else:
        results["functionalEquation"] = {"chi": rep.chi, "sign": rep.sign}
    results["rh"] = rh_block
    _emit(args, results, files)
    return 0


def _guess_dim(V) -> int:
    if V is None:
        raise ParseError("--dim is required with --counts")
    return V.nvars - len(V.polys) - (1 if V.projective else 0)


def cmd_dirichlet(args):
    m = args.mod
    chars = all_characters(m)
    results = {
        "modulus": m,
        "generators": list(chars[0].group.generators),
        "orders": list(chars[0].group.orders),
        "characters": [
            {"exponents": list(c.exponents), "order": c.order, "conductor": conductor(c)} for c in chars
        ],
    }
    if args.p is not None:
        ef = euler_factor_product_check(m, args.p)
        results["eulerFactor"] = {
            "p": args.p,
            "f": ef.f,
            "g": ef.g,
            "product": list(ef.product),
            "expected": list(ef.expected),
            "pass": ef.passed,
        }
        cz = cyclotomic_zeta_factor(m, args.p)
        results["cyclotomicFactor"] = {
            "fromCharacters": list(cz.from_characters),
            "fromSplitting": list(cz.from_splitting),
            "ramificationIndex": cz.ramification_index,
            "residueDegree": cz.residue_degree,
            "primes": cz.n_primes,
            "agree": cz.agree,
        }
    if args.density is not None:
        a, X = args.density
        ratio, expected = progression_density(a, m, X)
        results["density"] = {"a": a, "X": X, "ratio": ratio, "expected": expected}
    csv_text = None
    if args.format == "csv":
        chi = make_character(m, args.char) if args.char else None
        csv_text = character_table_csv(chi) if chi else "".join(
            character_table_csv(c) for c in chars
        )
    _emit(args, results, csv_text=csv_text)
    return 0


def cmd_lfun(args):
    chi = make_character(args.mod, args.char or [])
    s = complex(args.s)
    val = l_partial_eval(chi, s, args.N)
    results = {
        "modulus": args.mod,
        "exponents": list(chi.exponents),
        "s": _cplx(s),
        "N": args.N,
        "value": _cplx(val.value),
        "errorBound": val.error_bound,
    }
    _emit(args, results)
    return 0


def cmd_analytic(args):
    results = {}
    files = []
    if args.zeta is not None:
        results["zeta"] = {"s": _cplx(complex(args.zeta)), "value": _cplx(zeta_eval(complex(args.zeta)))}
    if args.psi is not None:
        zeros = load_zeros(args.zeros)
        if args.zeros:
            files.append(args.zeros)
        K = len(zeros) if args.K is None else args.K
        x = args.psi
        tabs = arithmetic_tables(max(int(math.floor(x)), 2))
        approx = explicit_formula_psi(x, zeros, K)
        results["psi"] = {"x": x, "K": K, "explicitFormula": approx, "sieve": tabs.psi0(x)}
    if args.von_koch is not None:
        vk = von_koch_check(args.von_koch)
        results["vonKoch"] = {"x": vk.x, "lhs": vk.lhs, "rhs": vk.rhs, "pass": vk.passed}
    if not results:
        raise ParseError("nothing to do: give --zeta, --psi or --von-koch")
    _emit(args, results, files)
    return 0


def cmd_ec(args):
    E = EllipticCurveQ(args.a, args.b)
    rows = ap_table(E, args.ap_upto)
    results = {
        "a": args.a,
        "b": args.b,
        "discriminant": E.discriminant,
        "ap": [{"p": p, "ap": ap, "good": good} for p, ap, good in rows],
    }
    if args.s is not None:
        results["partialL"] = {
            "s": args.s,
            "P": args.ap_upto,
            "value": _cplx(partial_l(E, args.s, args.ap_upto)),
            "note": "bad primes omitted",
        }
    csv_rows = [(p, "" if ap is None else ap, int(good)) for p, ap, good in rows]
    _emit(args, results, csv_text=_csv(csv_rows, ["p", "a_p", "good"]))
    return 0


# ---------------------------------------------------------------------------


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="zetalab", description="Zeta and L-functions: finite fields, characters, primes.")
    ap.add_argument("--version", action="version", version=f"zetalab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    jobs_default = os.cpu_count() or 1

    p = sub.add_parser("count", help="point counts over F_{p^n}, n = 1..N")
    p.add_argument("file")
    p.add_argument("--upto", type=int, default=3)
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("zeta", help="zeta function, functional equation and RH checks")
    p.add_argument("file", nargs="?")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--genus", type=int)
    grp.add_argument("--deg-bounds", type=int, nargs=2, metavar=("DP", "DQ"))
    p.add_argument("--upto", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--counts", help="comma-separated counts instead of a variety file")
    p.add_argument("--q", type=int)
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("dirichlet", help="characters mod m, Euler factors, densities")
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--p", type=int)
    p.add_argument("--density", type=int, nargs=2, metavar=("A", "X"))
    p.add_argument("--char", type=_int_list, help="exponent vector for the CSV table")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_dirichlet)

    p = sub.add_parser("lfun", help="partial Dirichlet L-series with tail bound")
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--char", type=_int_list)
    p.add_argument("--s", type=complex, default=1.0)
    p.add_argument("--N", type=int, default=10**5)
    p.set_defaults(func=cmd_lfun)

    p = sub.add_parser("analytic", help="Riemann zeta, explicit formula, von Koch")
    p.add_argument("--zeta", type=complex)
    p.add_argument("--psi", type=float)
    p.add_argument("--zeros")
    p.add_argument("--K", type=int)
    p.add_argument("--von-koch", type=float)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("ec", help="a_p table and partial L of y^2 = x^3 + ax + b")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--ap-upto", type=int, default=100)
    p.add_argument("--s", type=float)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_ec)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"zetalab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ParseError, OSError) as exc:
        print(f"zetalab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
