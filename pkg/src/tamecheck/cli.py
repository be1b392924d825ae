"""Command-line entry point ``tamecheck``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .errors import InconsistencyError, TamecheckError
from .exprparse import parse_problem_file
from .report import CHECKS, AnalysisOptions, analyze, render_json, render_text
from .verify import verify_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_AUDIT = 3
EXIT_VERIFY = 4


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tamecheck", description="Decide tameness criteria for polynomial deformations.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze a problem file or a built-in example")
    a.add_argument("problem", help="path to a problem file, or the name of a built-in example")
    a.add_argument("--check", choices=("all",) + CHECKS, default="all")
    a.add_argument("--max-power", type=int)
    a.add_argument("--max-weight", type=int)
    a.add_argument("--strict", action="store_true", help="demote HOLDS with caveat to UNDETERMINED")
    a.add_argument("--json", metavar="OUT", help="write the JSON report here ('-' for stdout)")
    a.add_argument("--budget-pairs", type=int)
    a.add_argument("--budget-degree", type=int)

    v = sub.add_parser("verify", help="re-check every certificate and witness in a JSON report")
    v.add_argument("report")

    sub.add_parser("examples", help="list the built-in examples")
    return p


def _load_problem(arg: str):
    path = Path(arg)
    if path.is_file():
        return parse_problem_file(path.read_text(encoding="utf-8"), path.stem)
    if arg in corpus.names():
        return corpus.load(arg)
    raise FileNotFoundError(f"no such file or built-in example: {arg}")


def _analyze(args) -> int:
    try:
        problem = _load_problem(args.problem)
        opts = AnalysisOptions.for_problem(
            problem,
            max_power=args.max_power,
            max_weight=args.max_weight,
            budget_pairs=args.budget_pairs,
            budget_degree=args.budget_degree,
            checks=None if args.check == "all" else frozenset([args.check]),
            strict=args.strict or None,
        )
    except (TamecheckError, OSError) as exc:
        print(f"tamecheck: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report = analyze(problem, opts)
    except InconsistencyError as exc:
        if exc.report is not None:
            sys.stderr.write(render_text(exc.report))
        print(f"tamecheck: {exc}", file=sys.stderr)
        return EXIT_AUDIT
    if args.json == "-":
        sys.stdout.write(render_json(report))
        return EXIT_OK
    sys.stdout.write(render_text(report))
    if args.json:
        Path(args.json).write_text(render_json(report), encoding="utf-8")
    return EXIT_OK


def _verify(args) -> int:
    try:
        doc = json.loads(Path(args.report).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        print(f"tamecheck: {exc}", file=sys.stderr)
        return EXIT_INPUT
    failures = verify_report(doc)
    for msg in failures:
        print(f"FAIL {msg}")
    if failures:
        return EXIT_VERIFY
    print(f"ok: {len(doc.get('verdicts', {}))} verdicts re-verified")
    return EXIT_OK


def _examples(_args) -> int:
    for name in corpus.names():
        print(f"{name:<15} {corpus.describe(name)}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    handler = {"analyze": _analyze, "verify": _verify, "examples": _examples}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
