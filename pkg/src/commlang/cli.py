"""``commlang`` command line: eval, equiv, report, fuzz.

Exit status 0 means success, 1 a failed verification (inequivalent
languages, a violated bound, a fuzz mismatch), 2 a usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import grid as G
from .dfa import dfa_equivalent, dfa_from_grid, state_complexity, to_dot
from .expr import ExprError, eval_text
from .fuzz import describe, run_fuzz
from .witnesses import SUITES, VIOLATES, render_csv, render_json, run_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _vec(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def summarize(g: G.GridAutomaton) -> dict:
    v = G.grid_index_period(g)
    return {
        "sc": state_complexity(g),
        "index": list(v.index_vector),
        "period": list(v.period_vector),
        "group": G.grid_is_group(g),
        "aperiodic": G.grid_is_aperiodic(g),
        "alphabet": "".join(G.grid_alphabet(g)),
    }


def summary_line(g: G.GridAutomaton) -> str:
    s = summarize(g)
    yn = {True: "yes", False: "no"}
    return (
        f"sc={s['sc']} index={_vec(s['index'])} period={_vec(s['period'])} "
        f"group={yn[s['group']]} aperiodic={yn[s['aperiodic']]} alphabet={{{','.join(s['alphabet'])}}}"
    )


def _alphabet(text: str) -> tuple[str, ...]:
    letters = tuple(text)
    if len(set(letters)) != len(letters) or not all(c.isalpha() and c.islower() for c in letters):
        raise argparse.ArgumentTypeError("alphabet must be distinct lowercase letters, e.g. 'ab'")
    return letters


def cmd_eval(args) -> int:
    g = eval_text(args.expr, args.alphabet)
    if args.json:
        print(json.dumps({"grid": g.to_dict(), **summarize(g)}, indent=2, sort_keys=True))
    elif args.dot:
        sys.stdout.write(to_dot(dfa_from_grid(g)))
    else:
        print(summary_line(g))
    return EXIT_OK


def cmd_equiv(args) -> int:
    a = eval_text(args.left, args.alphabet)
    b = eval_text(args.right, args.alphabet)
    if a.alphabet != b.alphabet:
        print(f"not comparable: alphabets {''.join(a.alphabet)!r} and {''.join(b.alphabet)!r}")
        return EXIT_FAIL
    same = dfa_equivalent(dfa_from_grid(a), dfa_from_grid(b))
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_FAIL


def cmd_report(args) -> int:
    reports, markdown = run_report(SUITES[args.suite]())
    if args.json:
        print(render_json(reports))
    elif args.csv:
        sys.stdout.write(render_csv(reports))
    else:
        sys.stdout.write(markdown)
    return EXIT_FAIL if any(r.verdict == VIOLATES for r in reports) else EXIT_OK


def cmd_fuzz(args) -> int:
    result = run_fuzz(args.seed, args.cases, args.k, args.max_index, args.max_period)
    print(f"seed={args.seed} cases={args.cases} k<={args.k} index<={args.max_index} period<={args.max_period}")
    print(result.summary())
    if not result.ok:
        print("counterexample: " + describe(result.counterexamples[0]))
        return EXIT_FAIL
    return EXIT_OK


def _nat(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return n


def _pos(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="commlang", description="Operations on commutative regular languages.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression and print its measurements")
    p.add_argument("expr")
    p.add_argument("--alphabet", type=_alphabet, required=True)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="print the grid as JSON")
    out.add_argument("--dot", action="store_true", help="print the grid DFA as Graphviz DOT")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("equiv", help="decide whether two expressions denote the same language")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--alphabet", type=_alphabet, required=True)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("report", help="run a witness suite")
    p.add_argument("--suite", choices=sorted(SUITES), default="default")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("fuzz", help="compare every operation against the brute-force oracle")
    p.add_argument("--seed", type=_nat, default=0)
    p.add_argument("--cases", type=_nat, default=100)
    p.add_argument("--k", type=_pos, default=3, help="largest alphabet size sampled")
    p.add_argument("--max-index", type=_nat, default=3)
    p.add_argument("--max-period", type=_pos, default=3)
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ExprError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
