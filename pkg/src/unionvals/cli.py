"""Command-line interface: ``unionvals <subcommand> ...``.

Exit codes: 0 success / property holds, 1 violation or witness found,
2 input or usage error.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import axioms
from .axioms import AxiomId, Verdict
from .base import BASE_VALUES
from .coalitional import CoalitionalValueId
from .errors import UnionValsError
from .game import format_rational, quotient_game, quotient_star_game
from .gamefile import dump_document, from_game, read_game, serialize_game
from .randgames import DEFAULT_WORTH_BOUNDS

VALUE_CHOICES = [v.value for v in CoalitionalValueId] + list(BASE_VALUES)
AXIOM_CHOICES = [a.value for a in AxiomId]


class UsageError(Exception):
    pass


def _worth_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\.\.(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unionvals", description="Egalitarian values for games with a priori unions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print one allocation")
    p.add_argument("--game", required=True)
    p.add_argument("--value", required=True, choices=VALUE_CHOICES)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="check one property on one game")
    p.add_argument("--game", required=True)
    p.add_argument("--value", required=True, choices=[v.value for v in CoalitionalValueId])
    p.add_argument("--axiom", required=True, choices=AXIOM_CHOICES)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="look for a counterexample on random games")
    p.add_argument("--value", required=True, choices=[v.value for v in CoalitionalValueId])
    p.add_argument("--axiom", required=True, choices=AXIOM_CHOICES)
    p.add_argument("--players", type=int, default=3)
    p.add_argument("--unions", type=int, default=None, help="default: cycle through 2..n-1")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--worth-range", type=_worth_range, default=DEFAULT_WORTH_BOUNDS)
    p.add_argument("--out", help="write the witness game document here")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("matrix", help="run the value x property grid")
    p.add_argument("--players", type=int, action="append", help="repeatable; default 3, 4 and 5")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--worth-range", type=_worth_range, default=DEFAULT_WORTH_BOUNDS)

    p = sub.add_parser("quotient", help="emit the quotient (or quotient*) game document")
    p.add_argument("--game", required=True)
    p.add_argument("--star", action="store_true")

    p = sub.add_parser("table", help="all eight coalitional values, one row per player")
    p.add_argument("--game", required=True)
    p.add_argument("--json", action="store_true")
    return parser


def _fmt_table(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
    lines = []
    for r in [header] + rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _alloc_json(alloc: dict[str, Fraction]) -> dict[str, str]:
    return {p: format_rational(x) for p, x in alloc.items()}


def _report_json(rep) -> dict:
    out = {
        "value": rep.value.value,
        "axiom": rep.axiom.value if rep.axiom else None,
        "verdict": rep.verdict.value,
        "vacuous": rep.vacuous,
    }
    if rep.trials is not None:
        out["trials"] = rep.trials
    if rep.witness is not None:
        w = rep.witness
        out["witness"] = {
            "players": list(w.players),
            "lhs": format_rational(w.lhs),
            "rhs": format_rational(w.rhs),
            "detail": w.detail,
            "partition": w.ug.partition(),
        }
    return out


def _cmd_compute(args, out):
    ug = read_game(args.game)
    if args.value in BASE_VALUES:
        alloc = BASE_VALUES[args.value](ug.game)
        label = args.value.upper()
    else:
        vid = CoalitionalValueId(args.value)
        alloc = vid(ug)
        label = vid.label
    if args.json:
        out.write(json.dumps({"value": args.value, "payoffs": _alloc_json(alloc)}, indent=2) + "\n")
    else:
        out.write(f"value: {label}\n")
        out.write(_fmt_table(["player", "payoff"], [[p, format_rational(x)] for p, x in alloc.items()]))
    return 0


def _write_report(rep, args, out):
    if args.json:
        out.write(json.dumps(_report_json(rep), indent=2) + "\n")
        return
    out.write(rep.summary() + "\n")
    if rep.witness is not None:
        out.write("witness game:\n")
        out.write(serialize_game(rep.witness.ug))


def _cmd_check(args, out):
    ug = read_game(args.game)
    rep = axioms.check(args.value, args.axiom, ug)
    _write_report(rep, args, out)
    return 1 if rep.violated else 0


def _cmd_search(args, out):
    m = args.unions if args.unions is not None else axioms.matrix_unions(args.players)
    rep = axioms.search_counterexample(
        args.value, args.axiom, args.players, m, args.trials, args.seed, args.worth_range
    )
    _write_report(rep, args, out)
    if rep.violated and args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_game(rep.witness.ug))
    return 1 if rep.verdict is Verdict.VIOLATED else 0


def _cmd_matrix(args, out):
    ns = tuple(args.players) if args.players else (3, 4, 5)
    result = axioms.axiom_matrix(ns, args.trials, args.seed, args.worth_range)
    out.write(result.render())
    return 0 if result.ok else 1


def _cmd_quotient(args, out):
    ug = read_game(args.game)
    q = quotient_star_game(ug) if args.star else quotient_game(ug)
    out.write(dump_document(from_game(q)))
    return 0


def _cmd_table(args, out):
    ug = read_game(args.game)
    allocs = {v: v(ug) for v in CoalitionalValueId}
    if args.json:
        payload = {v.value: _alloc_json(a) for v, a in allocs.items()}
        out.write(json.dumps(payload, indent=2) + "\n")
        return 0
    header = ["player"] + [v.label for v in CoalitionalValueId]
    rows = [[p] + [format_rational(allocs[v][p]) for v in CoalitionalValueId] for p in ug.game.players]
    out.write(_fmt_table(header, rows))
    return 0


COMMANDS = {
    "compute": _cmd_compute,
    "check": _cmd_check,
    "search": _cmd_search,
    "matrix": _cmd_matrix,
    "quotient": _cmd_quotient,
    "table": _cmd_table,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UnionValsError, OSError, ValueError) as exc:
        err.write(f"unionvals: error: {exc}\n")
        return 2


def entry() -> None:
    sys.exit(main())
