"""Command-line interface: classify, identify, symmetry, lax-check, lambda,
reduce, legendre, singular, linearisable, basis-info.

Reports are stable-ordered and byte-identical across runs at the same seed
and flags; `--json` switches to machine-readable output and `--timing`
appends wall-clock timing (off by default to keep reports reproducible).
Exit codes: 0 success, 2 rejected input, 3 inconclusive sampling.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional

from . import catalog
from .errors import (
    DegenerateChart,
    HeavenlyError,
    NoSamplePoint,
    NotInEF,
    NotInSpan,
    NotPurelyQuadratic,
    ParseError,
    UnsupportedDimension,
    ZeroPullback,
    ZeroReduction,
)
from .forms import b_omega_lambda
from .grassmann import (
    MAEquation,
    equation_from_json,
    equation_to_json,
    minor_basis,
    partial_legendre,
    singular_locus_quadratic,
    meets_all_sublagrangians,
)
from .integrability import (
    ReductionSample,
    classify_quartic_pair,
    ef_coordinates,
    identify_equation,
    integrable_4d,
    linearisable_3d,
    travelling_wave_reduce,
)
from .laxpair import catalog_pair, verify_lax
from .liesp import symmetry_algebra
from .parse import parse_equation, parse_lax_field

DEFAULT_SEED = 8128
DEFAULT_TRIALS = 50
DEFAULT_LAX_TRIALS = 20

EXIT_OK = 0
EXIT_REJECTED = 2
EXIT_INCONCLUSIVE = 3


class CommandError(Exception):
    def __init__(self, message: str, code: int = EXIT_REJECTED):
        super().__init__(message)
        self.code = code


def _add_source_options(sub, with_n=True):
    sub.add_argument("--expr", help="equation in the expression grammar")
    sub.add_argument("--builtin", help="named builtin equation")
    sub.add_argument("--file", help="path to a serialized equation")
    if with_n:
        sub.add_argument("--n", type=int, default=None,
                         help="dimension for --expr input")


def _add_common_options(sub):
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--trials", type=int, default=None)
    sub.add_argument("--json", action="store_true", dest="as_json")
    sub.add_argument("--timing", action="store_true")


def resolve_equation(args, default_n=4) -> MAEquation:
    chosen = [x for x in (args.expr, args.builtin, args.file) if x]
    if len(chosen) != 1:
        raise CommandError("provide exactly one of --expr, --builtin, --file")
    if args.builtin:
        try:
            return catalog.builtin_equation(args.builtin)
        except KeyError as err:
            raise CommandError(str(err)) from None
    if args.file:
        try:
            with open(args.file, "r", encoding="utf-8") as handle:
                return equation_from_json(handle.read())
        except (OSError, ValueError) as err:
            raise CommandError(f"cannot load equation: {err}") from None
    n = getattr(args, "n", None) or default_n
    return parse_equation(args.expr, n)


def render(report: Dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2)
    lines: List[str] = []

    def emit(key, value, indent=0):
        pad = "  " * indent
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            for k, v in value.items():
                emit(k, v, indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            lines.append(f"{pad}{key}:")
            for item in value:
                emit("-", item, indent + 1)
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: [{', '.join(str(v) for v in value)}]")
        else:
            lines.append(f"{pad}{key}: {value}")

    for k, v in report.items():
        emit(k, v)
    return "\n".join(lines)


def cmd_basis_info(args) -> Dict:
    basis = minor_basis(args.n)
    return {
        "command": "basis-info",
        "n": args.n,
        "total-dimension": basis.dimension,
        "per-degree-dims": list(basis.per_degree_dims),
        "basis": [str(p) for p in basis.basis_polys],
    }


def cmd_identify(args) -> Dict:
    eq = resolve_equation(args)
    if eq.n != 4:
        raise CommandError("identify works on 4-dimensional equations")
    name, fp = identify_equation(eq, seed=args.seed)
    return {
        "command": "identify",
        "equation": str(eq.poly),
        "name": name if name else "unknown",
        "fingerprint": fp.as_dict(),
        "seed": args.seed,
    }


def cmd_classify(args) -> Dict:
    eq = resolve_equation(args)
    if eq.n == 3:
        status = linearisable_3d(eq, seed=args.seed)
        return {
            "command": "classify",
            "n": 3,
            "equation": str(eq.poly),
            "linearisable": status.value,
            "seed": args.seed,
        }
    if eq.n != 4:
        raise CommandError("classify works on dimensions 3 and 4")
    trials = args.trials or DEFAULT_TRIALS
    name, fp = identify_equation(eq, seed=args.seed)
    report = integrable_4d(eq, trials=trials, seed=args.seed)
    out = {
        "command": "classify",
        "n": 4,
        "equation": str(eq.poly),
        "name": name if name else "unknown",
        "fingerprint": fp.as_dict(),
        "integrability": report.as_dict(),
        "seed": args.seed,
        "trials": trials,
    }
    try:
        pair = ef_coordinates(eq)
    except NotInEF:
        out["quartic-pair"] = "not applicable (needs the doubly tangent chart)"
    else:
        result = classify_quartic_pair(pair)
        entry = {
            "p": str(pair.p),
            "q": str(pair.q),
            "case": result.case if result.case else "unrecognized",
            "case-name": result.name,
        }
        if result.j_invariants is not None:
            entry["j-invariants"] = [str(j) if j is not None else "n/a"
                                     for j in result.j_invariants]
        if result.singular_dim is not None:
            entry["singular-dim"] = result.singular_dim
        out["quartic-pair"] = entry
        fingerprint_name = name if name else "unknown"
        route_agrees = (result.name == fingerprint_name) or (
            result.case in (4, 7, 10) and name is None)
        out["routes-agree"] = bool(route_agrees)
    if args.save_eq:
        with open(args.save_eq, "w", encoding="utf-8") as handle:
            handle.write(equation_to_json(eq))
        out["saved-to"] = args.save_eq
    return out


def cmd_symmetry(args) -> Dict:
    eq = resolve_equation(args, default_n=4)
    alg = symmetry_algebra(eq)
    description = alg.describe()
    return {
        "command": "symmetry",
        "equation": str(eq.poly),
        "dimension": description["dimension"],
        "generators": description["generators"],
        "center-dimension": description["center-dimension"],
        "derived-dimension": description["derived-dimension"],
        "reductive": description["reductive"],
    }


def cmd_lambda(args) -> Dict:
    eq = resolve_equation(args)
    if eq.n != 4:
        raise CommandError("the lambda invariant needs n = 4")
    lambda_zero, matrix = b_omega_lambda(eq)
    return {
        "command": "lambda",
        "equation": str(eq.poly),
        "lambda-zero": lambda_zero,
        "pairing-matrix": [[str(x) for x in row] for row in matrix.entries],
    }


def cmd_lax_check(args) -> Dict:
    if args.builtin_pair:
        x1, x2, default_mode = catalog_pair(args.builtin_pair)
        eq = catalog.builtin_equation(args.builtin_pair)
    else:
        if not (args.x1 and args.x2):
            raise CommandError("provide --builtin-pair or both --x1 and --x2")
        eq = resolve_equation(args)
        x1 = parse_lax_field(args.x1, eq.n)
        x2 = parse_lax_field(args.x2, eq.n)
        default_mode = "strict"
    mode = args.mode or default_mode
    trials = args.trials or DEFAULT_LAX_TRIALS
    result = verify_lax(x1, x2, eq, mode, trials=trials, seed=args.seed)
    return {
        "command": "lax-check",
        "equation": str(eq.poly),
        "x1": str(x1),
        "x2": str(x2),
        "result": result.as_dict(),
        "seed": args.seed,
    }


def cmd_reduce(args) -> Dict:
    eq = resolve_equation(args)
    if eq.n != 4:
        raise CommandError("reduction starts from n = 4")
    k = [Fraction(x) for x in args.k.split(",")] if args.k else [Fraction(0)] * 3
    if len(k) != 3:
        raise CommandError("--k needs three comma-separated rationals")
    q_entries = [Fraction(x) for x in args.q.split(",")] if args.q else []
    q = [[Fraction(0)] * 4 for _ in range(4)]
    if q_entries:
        if len(q_entries) != 10:
            raise CommandError("--q needs ten upper-triangle entries")
        pos = 0
        for i in range(4):
            for j in range(i, 4):
                q[i][j] = q[j][i] = q_entries[pos]
                pos += 1
    sample = ReductionSample.from_values(k, q)
    reduced = travelling_wave_reduce(eq, sample)
    status = linearisable_3d(reduced, seed=args.seed)
    return {
        "command": "reduce",
        "equation": str(eq.poly),
        "k": [str(x) for x in k],
        "reduced": str(reduced.poly),
        "linearisable": status.value,
        "seed": args.seed,
    }


def cmd_legendre(args) -> Dict:
    eq = resolve_equation(args, default_n=4)
    try:
        flip = [int(x) for x in args.flip.split(",")] if args.flip else []
    except ValueError:
        raise CommandError("--flip needs comma-separated indices") from None
    moved = partial_legendre(eq, flip)
    return {
        "command": "legendre",
        "equation": str(eq.poly),
        "flip": flip,
        "result": str(moved.poly),
    }


def cmd_singular(args) -> Dict:
    eq = resolve_equation(args, default_n=4)
    dim, kernel = singular_locus_quadratic(eq)
    out = {
        "command": "singular",
        "equation": str(eq.poly),
        "dimension": dim,
        "kernel": [[[str(x) for x in row] for row in mat] for mat in kernel],
    }
    if eq.n == 4:
        out["meets-all-sublagrangians"] = meets_all_sublagrangians(
            eq, kernel, seed=args.seed)
    return out


def cmd_linearisable(args) -> Dict:
    eq = resolve_equation(args, default_n=3)
    if eq.n != 3:
        raise CommandError("the linearisability test is for n = 3")
    status = linearisable_3d(eq, seed=args.seed)
    return {
        "command": "linearisable",
        "equation": str(eq.poly),
        "linearisable": status.value,
        "seed": args.seed,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heavenly",
        description="Exact classification toolkit for symplectic Monge-Ampere equations")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("basis-info", help="minor-span dimensions and basis")
    sub.add_argument("--n", type=int, required=True)
    _add_common_options(sub)
    sub.set_defaults(handler=cmd_basis_info)

    sub = subs.add_parser("classify", help="full pipeline: fingerprint, "
                          "integrability, quartic pair")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.add_argument("--save-eq", help="write the equation to this path")
    sub.set_defaults(handler=cmd_classify)

    sub = subs.add_parser("identify", help="name the equation by its fingerprint")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.set_defaults(handler=cmd_identify)

    sub = subs.add_parser("symmetry", help="stabilizer subalgebra report")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.set_defaults(handler=cmd_symmetry)

    sub = subs.add_parser("lambda", help="vanishing of the pairing invariant")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.set_defaults(handler=cmd_lambda)

    sub = subs.add_parser("lax-check", help="verify a Lax pair on the variety")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.add_argument("--builtin-pair", help="catalogued pair name")
    sub.add_argument("--x1", help="first field expression")
    sub.add_argument("--x2", help="second field expression")
    sub.add_argument("--mode", choices=["strict", "mod-span"])
    sub.set_defaults(handler=cmd_lax_check)

    sub = subs.add_parser("reduce", help="travelling-wave reduction to n = 3")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.add_argument("--k", help="three comma-separated direction constants")
    sub.add_argument("--q", help="ten comma-separated quadratic-shift entries")
    sub.set_defaults(handler=cmd_reduce)

    sub = subs.add_parser("legendre", help="partial Legendre chart change")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.add_argument("--flip", help="comma-separated index pairs to flip")
    sub.set_defaults(handler=cmd_legendre)

    sub = subs.add_parser("singular", help="singular locus of a quadratic equation")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.set_defaults(handler=cmd_singular)

    sub = subs.add_parser("linearisable", help="3D linearisability test")
    _add_source_options(sub)
    _add_common_options(sub)
    sub.set_defaults(handler=cmd_linearisable)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        report = args.handler(args)
    except CommandError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except (ParseError, NotInSpan, NotPurelyQuadratic, UnsupportedDimension,
            NotInEF, ZeroReduction, ZeroPullback, DegenerateChart) as err:
        print(f"rejected: {err}", file=sys.stderr)
        return EXIT_REJECTED
    except NoSamplePoint as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except HeavenlyError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_REJECTED
    if args.timing:
        report["elapsed-seconds"] = round(time.monotonic() - started, 3)
    print(render(report, args.as_json))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
