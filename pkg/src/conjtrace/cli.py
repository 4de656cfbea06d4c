"""Command-line front end.

    conjtrace verify [all | figure8 | whitehead | link622 | link623 | trefoil | remark | triangle:Q ...]
                     [--json OUT] [--md OUT] [--tolerance TOL]
    conjtrace table NAME [--format md|json]
    conjtrace units RING
    conjtrace divisors RING A [B]
    conjtrace sqrt RING A [B]
    conjtrace length RING A [B]

Ring elements are given as the two integer coefficients of a + b*tau and
printed as ``a+b*w`` (eisenstein), ``a+b*i`` (gaussian), ``a+b*th``
(kleinian7) or a plain integer.

Exit codes: 0 all checks passed, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .geodesic import DEFAULT_TOLERANCE, SPECTRUM_ENV, real_length
from .ring import RingElem, RingId, divisors, embed, sqrt_exact, units
from .scenarios import SCENARIOS, VERIFY_ALL, layout_rows, run_scenario, validate_name, verify

log = logging.getLogger("conjtrace")

WORD_SYNTAX = "Words: 'a' generator, 'A' its inverse, 'b^2' and 'b^-1' for exponents."


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_document(results) -> dict:
    return {
        "artifact-version": __version__,
        "scenarios": [r.to_dict() for r in sorted(results, key=lambda r: r.name)],
    }


def table_records(name: str) -> tuple[list, list, list]:
    if name not in SCENARIOS:
        raise UsageError(f"no candidate table for {name!r}; choose one of {', '.join(SCENARIOS)}")
    s = SCENARIOS[name]
    return layout_rows(s, run_scenario(s))


def render_table_md(name: str) -> str:
    rows, cols, grid = table_records(name)
    s = SCENARIOS[name]
    corner = "z \\ y" if s.row_axis == "z" else "y \\ z"
    lines = [
        "| " + " | ".join([corner] + cols) + " |",
        "|" + "---|" * (len(cols) + 1),
    ]
    for label, cells in zip(rows, grid):
        vals = [str(c.x2) if c.divisible else "-" for c in cells]
        lines.append("| " + " | ".join([label] + vals) + " |")
    return "\n".join(lines) + "\n"


def render_table_json(name: str) -> list[dict]:
    _, _, grid = table_records(name)
    return [c.to_dict() for line in grid for c in line]


def render_markdown(results) -> str:
    out = [f"# Verification report (conjtrace {__version__})", ""]
    for r in sorted(results, key=lambda r: r.name):
        out.append(f"## {r.name}: {'PASS' if r.passed else 'FAIL'}")
        out.append("")
        for c in r.checks:
            out.append(f"- [{'x' if c.passed else ' '}] `{c.id}` {c.detail}")
        out.append("")
        if r.name in SCENARIOS and r.report:
            out.append(render_table_md(r.name))
    return "\n".join(out)


def cmd_verify(args) -> int:
    names = list(args.names) or ["all"]
    expanded = []
    for n in names:
        expanded.extend(VERIFY_ALL if n == "all" else [n])
    for n in expanded:
        try:
            validate_name(n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    results = [verify(n, tolerance=args.tolerance) for n in dict.fromkeys(expanded)]
    for r in sorted(results, key=lambda r: r.name):
        failed = [c for c in r.checks if not c.passed]
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<12} {len(r.checks)} checks")
        for c in failed:
            print(f"      failed {c.id}: {c.detail}")
    ok = sum(r.passed for r in results)
    print(f"{ok}/{len(results)} scenarios passed")
    if args.json:
        write_atomic(args.json, dumps(build_document(results)))
    if args.md:
        write_atomic(args.md, render_markdown(results))
    return 0 if ok == len(results) else 1


def cmd_table(args) -> int:
    if args.format == "md":
        sys.stdout.write(render_table_md(args.name))
    else:
        sys.stdout.write(dumps(render_table_json(args.name)))
    return 0


def _elem(args) -> RingElem:
    try:
        return RingElem(RingId.parse(args.ring), args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_units(args) -> int:
    try:
        ring = RingId.parse(args.ring)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for u in units(ring):
        print(u)
    return 0


def cmd_divisors(args) -> int:
    e = _elem(args)
    if not e:
        raise UsageError("zero has infinitely many divisors")
    ds = divisors(e)
    for d in ds:
        print(d)
    log.info("%d divisors of %s", len(ds), e)
    return 0


def cmd_sqrt(args) -> int:
    for r in sqrt_exact(_elem(args)):
        print(r)
    return 0


def cmd_length(args) -> int:
    try:
        print(f"{real_length(embed(_elem(args))):.9f}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conjtrace",
        description=__doc__.split("\n\n")[0],
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=WORD_SYNTAX + f" Set ${SPECTRUM_ENV} to use another length-spectrum file.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification pipelines")
    p.add_argument("names", nargs="*", help="scenario names, 'all' (default) or triangle:Q")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--md", metavar="PATH", help="write a markdown report here")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                   help="geodesic length elimination tolerance (default %(default)g)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="print a candidate x^2 table in the printed layout")
    p.add_argument("name")
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("units", help="list the units of a ring")
    p.add_argument("ring")
    p.set_defaults(func=cmd_units)

    for name, func, help_ in (
        ("divisors", cmd_divisors, "list all divisors of a + b*tau"),
        ("sqrt", cmd_sqrt, "list exact square roots of a + b*tau"),
        ("length", cmd_length, "real translation length for trace a + b*tau"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("ring")
        p.add_argument("a", type=int)
        p.add_argument("b", type=int, nargs="?", default=0)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"conjtrace: error: {exc}", file=sys.stderr)
        return 2
