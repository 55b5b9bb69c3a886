"""Command-line front end.

Verb paths: poly.{check,rank,galois,scan}, algebra.{validate,grade},
family.{build,verify,extend}, type.verdict.  Every command prints one JSON
report per line on stdout with deterministic key order, so identical inputs
give byte-identical output.

Exit codes: 0 the computation ran and the predicate holds (or the verb is a
pure construction), 3 it ran and the predicate fails or the system is
infeasible, 1 bad input, 2 the precision cap was reached.
"""

import argparse
import itertools
import json
import sys

from . import __version__
from .engine import (
    build_family_member,
    extend_family,
    type_feasibility_verdict,
    verify_family_member,
)
from .errors import InputError, PrecisionCapError, ToolkitError
from .galois_small import table1_check
from .liealg import LieAlgebra, diagonal_grading_feasible, validate
from .linalg import format_fraction
from .polycore import IntPolynomial, is_anosov_polynomial
from .unitlattice import rank_of_roots

_TOOL = "anosov"


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; 2 is reserved for the
    # precision cap, so route every usage problem through InputError
    def error(self, message):
        raise InputError(message)


def _emit(command, result):
    report = {
        "tool": _TOOL,
        "version": __version__,
        "command": command,
        "result": result,
    }
    print(json.dumps(report, sort_keys=True), flush=True)


def _parse_poly_text(text):
    if "x" in text:
        return IntPolynomial.parse(text)
    return IntPolynomial.from_descending(_int_list(text, "coefficient"))


def _int_list(text, what):
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise InputError(f"empty {what} list")
    try:
        return [int(s) for s in items]
    except ValueError as exc:
        raise InputError(f"bad {what} list {text!r}") from exc


def _poly_from_args(args):
    if args.poly is not None:
        return IntPolynomial.parse(args.poly)
    return IntPolynomial.from_descending(_int_list(args.coeffs, "coefficient"))


def _add_poly_input(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly", help='polynomial text, e.g. "x^2-3x+1"')
    group.add_argument("--coeffs", help="descending integer coefficients, e.g. 1,0,-10,0,1")


def _load_algebra(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not JSON: {exc}") from exc
    try:
        return LieAlgebra.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path} does not hold a Lie algebra: {exc}") from exc


def _mat_json(mat):
    return [[format_fraction(x) for x in row] for row in mat]


# -- poly ------------------------------------------------------------------


def _cmd_poly_check(args):
    f = _poly_from_args(args)
    if not is_anosov_polynomial(f):
        _emit("poly.check", {"anosov": False, "poly": f.to_json()})
        return 3
    profile = rank_of_roots(f)
    _emit("poly.check", {"anosov": True, "rank": profile.rank, "d": profile.d})
    return 0


def _cmd_poly_rank(args):
    f = _poly_from_args(args)
    profile = rank_of_roots(f, bound=args.bound)
    _emit("poly.rank", profile.to_json())
    return 0


def _cmd_poly_galois(args):
    f = _poly_from_args(args)
    report = table1_check(f)
    _emit("poly.galois", report.to_json())
    return 0 if report.table1_row_ok else 3


def _cmd_poly_scan(args):
    if args.coeff_bound < 0:
        raise InputError("coefficient bound must be nonnegative")
    degree = args.degree
    mids = range(-args.coeff_bound, args.coeff_bound + 1)
    for middle in itertools.product(mids, repeat=degree - 1):
        for last in (-1, 1):
            f = IntPolynomial.from_descending([1, *middle, last])
            if not is_anosov_polynomial(f):
                continue
            profile = rank_of_roots(f)
            row = table1_check(f, rank_profile=profile)
            result = row.to_json()
            result["rank"] = profile.rank
            result["d"] = profile.d
            _emit("poly.scan", result)
    return 0


# -- algebra -----------------------------------------------------------------


def _cmd_algebra_validate(args):
    g = _load_algebra(args.file)
    report = validate(g)
    _emit("algebra.validate", {"ok": report.ok, "violations": list(report.violations)})
    return 0 if report.ok else 3


def _cmd_algebra_grade(args):
    g = _load_algebra(args.file)
    cert = diagonal_grading_feasible(g)
    _emit("algebra.grade", cert.to_json())
    return 0 if cert else 3


# -- family ------------------------------------------------------------------


def _cmd_family_build(args):
    alg, mat = build_family_member(args.k)
    report = verify_family_member(args.k)
    bundle = {
        "k": args.k,
        "xi": report.to_json()["xi"],
        "algebra": alg.to_json(),
        "automorphism": _mat_json(mat),
        "report": report.to_json(),
    }
    _emit("family.build", bundle)
    return 0 if report.passed else 3


def _cmd_family_verify(args):
    report = verify_family_member(args.k)
    _emit("family.verify", report.to_json())
    return 0 if report.passed else 3


def _cmd_family_extend(args):
    alg, mat, verdict = extend_family(args.k, args.n)
    result = {
        "algebra": alg.to_json(),
        "automorphism": _mat_json(mat),
        "verdict": verdict.to_json(),
    }
    _emit("family.extend", result)
    return 0


# -- type --------------------------------------------------------------------


def _cmd_type_verdict(args):
    tp = tuple(_int_list(args.type, "type"))
    f1 = None if args.f1 is None else _parse_poly_text(args.f1)
    verdict = type_feasibility_verdict(tp, f1=f1)
    _emit("type.verdict", verdict.to_json())
    return 0


# -- wiring --------------------------------------------------------------------


def _build_parser():
    parser = _Parser(prog=_TOOL, description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"{_TOOL} {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    poly = groups.add_parser("poly", help="Anosov polynomial pipelines")
    poly_verbs = poly.add_subparsers(dest="verb", required=True)
    p = poly_verbs.add_parser("check", help="Anosov predicate with rank and d")
    _add_poly_input(p)
    p.set_defaults(run=_cmd_poly_check)
    p = poly_verbs.add_parser("rank", help="full root-relation profile")
    _add_poly_input(p)
    p.add_argument("--bound", type=int, default=64, help="exponent search bound")
    p.set_defaults(run=_cmd_poly_rank)
    p = poly_verbs.add_parser("galois", help="Galois group and table row check")
    _add_poly_input(p)
    p.set_defaults(run=_cmd_poly_galois)
    p = poly_verbs.add_parser("scan", help="stream reports for all Anosov polynomials in a box")
    p.add_argument("--degree", type=int, choices=(2, 3, 4), required=True)
    p.add_argument("--coeff-bound", type=int, required=True)
    p.set_defaults(run=_cmd_poly_scan)

    algebra = groups.add_parser("algebra", help="Lie algebra pipelines")
    algebra_verbs = algebra.add_subparsers(dest="verb", required=True)
    p = algebra_verbs.add_parser("validate", help="structure constant checks")
    p.add_argument("file", help="LieAlgebra JSON path")
    p.set_defaults(run=_cmd_algebra_validate)
    p = algebra_verbs.add_parser("grade", help="diagonal positive grading or Farkas certificate")
    p.add_argument("file", help="LieAlgebra JSON path")
    p.set_defaults(run=_cmd_algebra_grade)

    family = groups.add_parser("family", help="quadratic descent family")
    family_verbs = family.add_subparsers(dest="verb", required=True)
    p = family_verbs.add_parser("build", help="construct the dimension-12 member")
    p.add_argument("-k", type=int, required=True, help="positive nonsquare field parameter")
    p.set_defaults(run=_cmd_family_build)
    p = family_verbs.add_parser("verify", help="run every family check")
    p.add_argument("-k", type=int, required=True, help="positive nonsquare field parameter")
    p.set_defaults(run=_cmd_family_verify)
    p = family_verbs.add_parser("extend", help="add an abelian Anosov factor")
    p.add_argument("-k", type=int, required=True, help="positive nonsquare field parameter")
    p.add_argument("-n", type=int, required=True, help="total dimension, at least 14")
    p.set_defaults(run=_cmd_family_extend)

    typ = groups.add_parser("type", help="type feasibility verdicts")
    typ_verbs = typ.add_subparsers(dest="verb", required=True)
    p = typ_verbs.add_parser("verdict", help="verdict for a lower central series type")
    p.add_argument("type", help="comma separated layer dimensions, e.g. 6,2,3")
    p.add_argument("--f1", help="first-layer characteristic polynomial refinement")
    p.set_defaults(run=_cmd_type_verdict)

    return parser


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
        return args.run(args)
    except PrecisionCapError as exc:
        print(f"{_TOOL}: precision cap: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"{_TOOL}: error: {exc}", file=sys.stderr)
        return 1
    except ToolkitError as exc:
        print(f"{_TOOL}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main(argv=sys.argv[1:]))
