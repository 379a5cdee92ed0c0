"""Command-line interface.

Exit codes: 0 success or affirmative verdict, 1 well-formed negative
verdict, 2 usage or parse error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import catalan, stratify
from .autom import Endo, compose, endo_from_json, endo_to_json
from .errors import (
    BudgetExceeded, DegreeLimitExceeded, InternalInvariant, NotAutomorphism, ParseError,
    PlaneAutError,
)
from .fields import QQ, Field
from .freeassoc import (
    NcPair, NcPoly, dicks_check, lift_tame, nc_dim_upto, nc_pair_from_json, nc_pair_to_json,
)
from .jvdk import (
    decompose, invert_automorphism, normal_form_from_json, normal_form_to_json, random_normal_form,
    recompose,
)
from .poly2 import max_degree

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _read_source(src: str, stdin) -> str:
    if src == "-":
        return stdin.read()
    try:
        return Path(src).read_text()
    except OSError as exc:
        raise _Usage(f"cannot read {src}: {exc}") from None


def _field(args) -> Field | None:
    return Field.parse(args.field) if args.field else None


def _endos(args, stdin, count: int) -> list[Endo]:
    """Read ``count`` endomorphisms from polynomial pairs or JSON sources."""
    field = _field(args)
    items = args.inputs or ["-"]
    if len(items) == 2 * count:
        fld = field or QQ
        return [Endo.parse(items[2 * k], items[2 * k + 1], fld) for k in range(count)]
    if len(items) == count:
        return [endo_from_json(_read_source(src, stdin), field) for src in items]
    raise _Usage(f"expected {count} pair(s) of polynomials or {count} JSON source(s)")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _emit_endo(phi: Endo, fmt: str, out) -> None:
    if fmt == "text":
        print(phi.f, file=out)
        print(phi.g, file=out)
    else:
        print(_dump(endo_to_json(phi)), file=out)


def _emit_nc(pair: NcPair, fmt: str, out) -> None:
    if fmt == "text":
        print(pair.f, file=out)
        print(pair.g, file=out)
    else:
        print(_dump(nc_pair_to_json(pair)), file=out)


# -- subcommands ------------------------------------------------------------------


def cmd_decompose(args, out, stdin):
    (phi,) = _endos(args, stdin, 1)
    print(_dump(normal_form_to_json(decompose(phi))), file=out)
    return EXIT_OK


def cmd_recompose(args, out, stdin):
    field = _field(args) or QQ
    src = args.inputs[0] if args.inputs else "-"
    text = _read_source(src, stdin)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    _emit_endo(recompose(normal_form_from_json(data, field)), args.format or "json", out)
    return EXIT_OK


def cmd_compose(args, out, stdin):
    phi, psi = _endos(args, stdin, 2)
    _emit_endo(compose(phi, psi), args.format or "json", out)
    return EXIT_OK


def cmd_invert(args, out, stdin):
    (phi,) = _endos(args, stdin, 1)
    _emit_endo(invert_automorphism(phi), args.format or "json", out)
    return EXIT_OK


def cmd_verify(args, out, stdin):
    (phi,) = _endos(args, stdin, 1)
    try:
        nf = decompose(phi)
    except NotAutomorphism as exc:
        print(f"not an automorphism: {exc}", file=out)
        return EXIT_NEGATIVE
    print(_dump(normal_form_to_json(nf)), file=out)
    return EXIT_OK


def cmd_verify_nc(args, out, stdin):
    field = _field(args)
    items = args.inputs or ["-"]
    if len(items) == 2 and "-" not in items:
        fld = field or QQ
        pair = NcPair(NcPoly.parse(items[0], fld), NcPoly.parse(items[1], fld))
    elif len(items) == 1:
        pair = nc_pair_from_json(_read_source(items[0], stdin), field)
    else:
        raise _Usage("expected two noncommutative polynomials or one JSON source")
    try:
        a = dicks_check(pair)
    except NotAutomorphism as exc:
        print(f"not an automorphism: {exc}", file=out)
        return EXIT_NEGATIVE
    print(f"a = {pair.field.format_scalar(a)}", file=out)
    return EXIT_OK


def cmd_lift(args, out, stdin):
    (phi,) = _endos(args, stdin, 1)
    _emit_nc(lift_tame(decompose(phi)), args.format or "json", out)
    return EXIT_OK


def cmd_count(args, out, stdin):
    if args.n == 1:
        poly = stratify.AFFINE_GROUP_ORDER
    elif args.n >= 2:
        poly = stratify.count_exact_degree(args.n)
    else:
        raise _Usage("--n must be at least 1")
    if args.symbolic:
        print(json.dumps(list(poly.coeffs)), file=out)
        print(poly, file=out)
    if args.q is not None:
        _prime(args.q)
        print(poly(args.q), file=out)
    elif not args.symbolic:
        raise _Usage("count needs --q or --symbolic")
    return EXIT_OK


def _prime(q: int) -> None:
    try:
        Field(q)
    except ValueError as exc:
        raise _Usage(str(exc)) from None


def cmd_census(args, out, stdin):
    _prime(args.q)
    if args.n < 1:
        raise _Usage("--n must be at least 1")
    config = stratify.CensusConfig(
        bruteforce_budget=args.budget or stratify.DEFAULT_BUDGET,
        structured_budget=args.budget or stratify.DEFAULT_BUDGET,
    )
    row = stratify.census_row(args.n, args.q, bruteforce=args.bruteforce,
                              coordinates=args.coordinates, config=config)
    if args.format == "csv":
        out.write(stratify.census_csv([row]))
    elif args.format == "json":
        print(_dump(dict(zip(stratify.CSV_COLUMNS, row.as_csv_row()))), file=out)
    else:
        bf = "-" if row.count_bruteforce is None else row.count_bruteforce
        print(f"n={row.n} q={row.q} formula={row.count_formula} bruteforce={bf} "
              f"q_degree={row.q_degree} expected_dimension={row.expected_dimension}", file=out)
    if row.count_bruteforce is not None and row.count_bruteforce != row.count_formula:
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_dim(args, out, stdin):
    if args.coordinates:
        print(stratify.dimension_coordinates(args.n), file=out)
    elif args.upto or args.n == 1:
        print(stratify.dimension_upto(args.n), file=out)
    else:
        print(stratify.dimension_degree(args.n), file=out)
    return EXIT_OK


def cmd_ncdim(args, out, stdin):
    print(nc_dim_upto(args.n), file=out)
    return EXIT_OK


def cmd_factorizations(args, out, stdin):
    facts = stratify.ordered_factorizations(args.n)
    if args.format == "json":
        print(json.dumps([list(f) for f in facts]), file=out)
    else:
        for f in facts:
            print(" ".join(map(str, f)), file=out)
    return EXIT_OK


def cmd_series(args, out, stdin):
    if args.format == "csv":
        out.write(catalan.catalan_csv(args.T))
        return EXIT_OK
    c = catalan.catalan_series(args.T).integers()
    d = catalan.d_series(args.T, args.eps).integers()
    if args.format == "json":
        print(json.dumps({"c": c, "d": d}), file=out)
    else:
        print("c: " + json.dumps(c), file=out)
        print("d: " + json.dumps(d), file=out)
    return EXIT_OK


def cmd_catalan(args, out, stdin):
    print(catalan.catalan_number(args.n), file=out)
    return EXIT_OK


def cmd_sample(args, out, stdin):
    field = _field(args) or QQ
    rng = random.Random(args.seed)
    nf = random_normal_form(field, rng, max_degree=args.max_beta_degree)
    _emit_endo(recompose(nf), args.format or "json", out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q or F<p> (default Q)")
    common.add_argument("--format", choices=["text", "json", "csv"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="override the enumeration budget")
    common.add_argument("--max-degree", type=int, help="polynomial degree limit (default 64)")

    parser = argparse.ArgumentParser(prog="planeaut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, inputs=False, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        if inputs:
            p.add_argument("inputs", nargs="*", help="polynomials, JSON files, or - for stdin")
        return p

    add("decompose", cmd_decompose, True, "endomorphism -> normal form JSON")
    add("recompose", cmd_recompose, True, "normal form JSON -> endomorphism")
    add("compose", cmd_compose, True, "compose two endomorphisms")
    add("invert", cmd_invert, True, "inverse automorphism")
    add("verify", cmd_verify, True, "automorphism test in K[x,y]")
    add("verify-nc", cmd_verify_nc, True, "Dicks test in K<x,y>")
    add("lift", cmd_lift, True, "lift an automorphism to K<x,y>")

    p = add("count", cmd_count, help="number of automorphisms of degree n over F_q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--symbolic", action="store_true")

    p = add("census", cmd_census, help="census report for (n, q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--coordinates", action="store_true")
    p.add_argument("--bruteforce", action="store_true")

    p = add("dim", cmd_dim, help="dimension formulas")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--upto", action="store_true")
    g.add_argument("--coordinates", action="store_true")

    p = add("ncdim", cmd_ncdim, help="coefficient-vector length in K<x,y>")
    p.add_argument("--n", type=int, required=True)

    p = add("factorizations", cmd_factorizations, help="ordered factorizations of n")
    p.add_argument("--n", type=int, required=True)

    p = add("series", cmd_series, help="Catalan and d(t) series")
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--eps", type=int, choices=[0, 1], default=1)

    p = add("catalan", cmd_catalan, help="Catalan number c_n")
    p.add_argument("--n", type=int, required=True)

    p = add("sample", cmd_sample, help="random automorphism from a seeded normal form")
    p.add_argument("--max-beta-degree", type=int, default=12)
    return parser


def run(argv=None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.max_degree:
            with max_degree(args.max_degree):
                return args.func(args, out, stdin)
        return args.func(args, out, stdin)
    except NotAutomorphism as exc:
        print(f"not an automorphism: {exc}", file=out)
        return EXIT_NEGATIVE
    except InternalInvariant as exc:
        print(f"internal error: {exc}", file=err)
        return EXIT_INTERNAL
    except (_Usage, ParseError, BudgetExceeded, DegreeLimitExceeded, ValueError, PlaneAutError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
