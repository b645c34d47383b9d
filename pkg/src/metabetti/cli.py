"""Command-line interface.

Exit codes: 0 success, 2 bad input, 3 resource cap hit, 4 cross-check disagreement.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from typing import List, Optional, Sequence

from . import __version__
from .coinvariants import CSV_COLUMNS, betti_split, coinvariant_dim, module_dim_bound
from .errors import InvalidInput, MetabettiError, ParseError
from .fields import QQ, Field, make_extension_field, prime_field
from .groebner import (
    ELIMINATION,
    GREVLEX,
    LEX,
    MAX_PAIRS,
    MonomialOrder,
    crosscheck_dim,
    gb_variable_names,
    laurent_ideal_basis,
    staircase_dimension,
)
from .lattice import MAX_COSETS, Lattice, congruence_lattice, kernel_lattice_prop53
from .laurent import default_variables, parse_polynomial
from .sigma import is_two_tame
from .stability import (
    PROP53_VARIABLES,
    demo_prop51,
    demo_prop53,
    demo_wreath,
    dim_sequence,
    m0_candidates,
)

FIELD_HELP = 'coefficient field: "Q", "F<p>" for a prime p, or "GF(p^r)"'
SUBGROUP_HELP = (
    'finite-index subgroup of Z^n: "m:<int>" for m·Z^n, "prop53:<p>,<r>" for the kernel of '
    'Z^2 -> F_{p^r}^*, or generator vectors such as "3,0;-2,1" (each ";"-separated group is one '
    "generator, i.e. one column of the basis matrix)"
)
EPILOG = (
    "CSV columns for dimension reports: " + ",".join(CSV_COLUMNS) + ". "
    "Scan CSV columns: m,index,dim. JSON objects carry a 'schema' field naming their version."
)


# -- input syntax -----------------------------------------------------------------------------


def parse_field(text: str) -> Field:
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"F(\d+)", t)
    if m:
        return prime_field(int(m.group(1)))
    m = re.fullmatch(r"GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)", t)
    if m:
        return make_extension_field(int(m.group(1)), int(m.group(2) or 1))
    raise ParseError(f"unrecognised field {text!r} (expected Q, F<p> or GF(p^r))")


def parse_variables(text: Optional[str], rank: Optional[int]) -> List[str]:
    if text:
        names = [v.strip() for v in text.split(",")]
        if rank is not None and rank != len(names):
            raise InvalidInput(f"--rank {rank} does not match {len(names)} variable names")
        return names
    return list(default_variables(rank or 2))


def parse_subgroup(text: str, n: int) -> Lattice:
    t = text.strip()
    m = re.fullmatch(r"m:\s*(-?\d+)", t)
    if m:
        return congruence_lattice(int(m.group(1)), n)
    m = re.fullmatch(r"prop53:\s*(\d+)\s*,\s*(\d+)", t)
    if m:
        if n != 2:
            raise InvalidInput("prop53 subgroups live in rank 2")
        return kernel_lattice_prop53(int(m.group(1)), int(m.group(2)))
    try:
        vectors = [tuple(int(x) for x in group.split(",")) for group in t.split(";")]
    except ValueError:
        raise ParseError(f"unrecognised subgroup {text!r}") from None
    for v in vectors:
        if len(v) != n:
            raise InvalidInput(f"subgroup generator {v} does not have length {n}")
    return Lattice.from_generators(vectors, n)


# -- output -----------------------------------------------------------------------------------


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, headers))] + [["" if c is None else str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines)


def _csv(headers, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(headers)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit_reports(reports, fmt: str, timing: bool) -> str:
    if fmt == "json":
        return "\n".join(r.to_json(timing) for r in reports)
    rows = [r.csv_row(timing) for r in reports]
    if fmt == "csv":
        return _csv(CSV_COLUMNS, rows)
    out = _table(CSV_COLUMNS, rows)
    extras = [(k, v) for r in reports for k, v in r.extra.items()]
    if extras:
        out += "\n" + "\n".join(f"{k}: {v}" for k, v in extras)
    return out


def _emit_dict(d: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(d)
    flat = {k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in d.items()}
    if fmt == "csv":
        return _csv(list(flat), [list(flat.values())])
    return _table(["key", "value"], list(flat.items()))


# -- argument parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--no-timing", action="store_true", help="omit wall-clock fields (for golden files)")
    common.add_argument("--max-cosets", type=int, default=MAX_COSETS, metavar="N",
                        help=f"largest subgroup index handled (default {MAX_COSETS})")
    common.add_argument("--max-gb-pairs", type=int, default=MAX_PAIRS, metavar="N",
                        help=f"pair-reduction cap for Groebner computations (default {MAX_PAIRS})")

    module = argparse.ArgumentParser(add_help=False)
    module.add_argument("--field", default="Q", help=FIELD_HELP)
    module.add_argument("--vars", default=None, help='comma-separated variable names (default "x,y"; "x1..xn" for --rank n != 2)')
    module.add_argument("--rank", type=int, default=None, help="rank n of Q = Z^n when --vars is not given")
    module.add_argument("--ideal", action="append", default=[], metavar="EXPR",
                        help="ideal generator, e.g. 'y - x^2 + x - 1' (repeatable; none means the whole group algebra)")

    parser = argparse.ArgumentParser(
        prog="metabetti",
        description="First Betti numbers of finite-index subgroups of split metabelian groups (k[Z^n]/I) ⋊ Z^n.",
        epilog=EPILOG,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    for name, helptext in (("betti", "Betti number of (kQ/I) ⋊ S"), ("dim", "dimension of the coinvariants kQ/(I + aug S)")):
        p = sub.add_parser(name, parents=[common, module], help=helptext, epilog=EPILOG)
        p.add_argument("--subgroup", required=True, help=SUBGROUP_HELP)
        p.add_argument("--module-gens", type=int, default=None, metavar="D",
                       help="also report the bound D·dim for a D-generated module with annihilator I")

    for name, helptext in (("scan", "dimensions over m·Z^n for m = 1..M"),
                           ("stabilize", "scan plus J_m = J_mr checks at the first maximiser")):
        p = sub.add_parser(name, parents=[common, module], help=helptext, epilog=EPILOG)
        p.add_argument("--M", type=int, default=12, help="scan limit (default 12)")

    p = sub.add_parser("sigma", parents=[common, module], help="sigma complement and 2-tameness of a principal ideal in rank 2")

    p = sub.add_parser("m0", parents=[common], help="orders s with phi(s)^2 <= d*s and the resulting m0")
    p.add_argument("--d", type=int, required=True, help="generator count of the tensor square")

    p = sub.add_parser("gb", parents=[common, module], help="Groebner basis of (I, aug S) in k[x, t]/(t·prod(x) - 1)")
    p.add_argument("--subgroup", default=None, help=SUBGROUP_HELP)
    p.add_argument("--order", choices=(GREVLEX, LEX, ELIMINATION), default=ELIMINATION)

    p = sub.add_parser("crosscheck", parents=[common, module], help="compare the group-algebra engine with the Groebner staircase")
    p.add_argument("--subgroup", required=True, help=SUBGROUP_HELP)

    demo = sub.add_parser("demo", help="packaged examples")
    demos = demo.add_subparsers(dest="demo", required=True, metavar="DEMO")
    p = demos.add_parser("prop51", parents=[common], help="F_p example with Betti number p^m + 2")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p = demos.add_parser("prop53", parents=[common], help="subgroups of index p^r - 1 with Betti number >= r + 2")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--crosscheck", action="store_true", help="also compute the dimension with the Groebner engine")
    p = demos.add_parser("wreath", parents=[common], help="Z wr Z: index-m subgroups with Betti number m + 1")
    p.add_argument("--m", type=int, default=2)
    return parser


# -- commands ---------------------------------------------------------------------------------


def _module_inputs(args):
    field = parse_field(args.field)
    names = parse_variables(args.vars, args.rank)
    gens = [parse_polynomial(text, field, names) for text in args.ideal]
    return field, names, gens


def _run(args) -> str:
    fmt = args.format
    timing = not args.no_timing
    caps = {"max_cosets": args.max_cosets}
    cmd = args.command

    if cmd in ("betti", "dim"):
        field, names, gens = _module_inputs(args)
        S = parse_subgroup(args.subgroup, len(names))
        label = args.subgroup.strip()
        if args.module_gens is not None:
            report = module_dim_bound(gens, S, field, args.module_gens, variables=names, subgroup=label, **caps)
            if cmd == "betti":
                report.betti = report.dimension + S.n
        else:
            fn = betti_split if cmd == "betti" else coinvariant_dim
            report = fn(gens, S, field, variables=names, subgroup=label, **caps)
        return _emit_reports([report], fmt, timing)

    if cmd in ("scan", "stabilize"):
        field, names, gens = _module_inputs(args)
        factors = (2, 3) if cmd == "stabilize" else ()
        report = dim_sequence(gens, field, args.M, n=len(names), variables=names,
                              claim2_factors=factors, **caps)
        if fmt == "json":
            return report.to_json()
        if fmt == "csv":
            return _csv(("m", "index", "dim"), report.csv_rows())
        out = _table(("m", "index", "dim"), report.csv_rows())
        if cmd == "stabilize":
            d = report.to_dict()
            out += "\n" + "\n".join([
                f"sup_observed: {d['sup_observed']}",
                f"argmax: {d['argmax']}",
                *(f"J_{c['m']} = J_{c['m'] * c['r']}: {c['equal']}" for c in d["claim2_checks"]),
                f"verdict: {d['verdict']}",
            ])
            if report.witness_chain:
                out += "\nwitness_chain: " + " | ".join(map(str, report.witness_chain))
        return out

    if cmd == "sigma":
        field, names, gens = _module_inputs(args)
        if len(gens) != 1:
            raise InvalidInput(f"sigma needs exactly one --ideal generator, got {len(gens)}")
        return _emit_dict(is_two_tame(gens[0]).to_dict(names), fmt)

    if cmd == "m0":
        return _emit_dict(m0_candidates(args.d).to_dict(), fmt)

    if cmd == "gb":
        field, names, gens = _module_inputs(args)
        S = parse_subgroup(args.subgroup, len(names)) if args.subgroup else None
        n = len(names)
        order = MonomialOrder(ELIMINATION, n) if args.order == ELIMINATION else MonomialOrder(args.order)
        gb = laurent_ideal_basis(gens, S, field, order=order, n=n, max_pairs=args.max_gb_pairs)
        stair = staircase_dimension(gb, range(n)) if args.order == ELIMINATION else staircase_dimension(gb)
        d = {
            "schema": "metabetti.groebner/1",
            "field": str(field),
            "variables": list(gb_variable_names(n, names)),
            "order": str(order),
            "basis": gb.to_strings(gb_variable_names(n, names)),
            "staircase": "infinite" if stair == float("inf") else stair,
        }
        return _emit_dict(d, fmt)

    if cmd == "crosscheck":
        field, names, gens = _module_inputs(args)
        S = parse_subgroup(args.subgroup, len(names))
        result = crosscheck_dim(gens, S, field, variables=names, subgroup=args.subgroup.strip(),
                                max_pairs=args.max_gb_pairs, **caps)
        return _emit_dict(result.to_dict(timing), fmt)

    if cmd == "demo":
        if args.demo == "prop51":
            report = demo_prop51(args.p, args.m, **caps)
        elif args.demo == "prop53":
            report = demo_prop53(args.p, args.r, crosscheck=args.crosscheck, **caps)
        else:
            report = demo_wreath(args.m, **caps)
        return _emit_reports([report], fmt, timing)

    raise InvalidInput(f"unknown command {cmd!r}")


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = _run(args)
    except MetabettiError as exc:
        print(f"error: {exc}", file=err)
        return exc.exit_code
    out.write(text + "\n")
    return 0


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
