"""Command-line surface: solve problems, list optima, run axiom suites.

Commands: ``solve``, ``assign``, ``axioms``, ``table``, and ``fuzz`` (an
axioms run with a large default budget).  Reports are byte-identical for
identical inputs, seed, budget and format; every report echoes the seed
and budget it was produced with.

Exit codes: 0 ok, 1 verdict-matrix mismatch (``table``), 2 input error,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .core import InvalidProblem, ParseError, Problem, decimal_rational, render_rational, require_valid
from .assignment import EnumerationCapExceeded, assigned_task_set, enumerate_optimal
from .axioms import AXIOM_ORDER, AXIOMS, VIOLATED
from .falsifier import falsify
from .rules import Rule, RuleUndefined, lookup_rule
from .table import (
    CONCRETE_RULES,
    render_table_csv,
    render_table_json,
    render_table_text,
    table_report,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_CAP = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_problem(path: str) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}", EXIT_INPUT) from exc
    try:
        return require_valid(Problem.from_json(text))
    except (ParseError, InvalidProblem, ValueError) as exc:
        raise _CliError(f"invalid problem file {path}: {exc}", EXIT_INPUT) from exc


def _parse_rules(spec: str | None) -> list[Rule]:
    names = [s for s in (spec.split(",") if spec else list(CONCRETE_RULES)) if s]
    try:
        return [lookup_rule(name.strip()) for name in names]
    except KeyError as exc:
        raise _CliError(str(exc.args[0]), EXIT_INPUT) from exc


def _parse_axioms(spec: str | None) -> list[str]:
    if not spec:
        return list(AXIOM_ORDER)
    names = [s.strip() for s in spec.split(",") if s.strip()]
    for name in names:
        if name not in AXIOMS:
            raise _CliError(f"unknown axiom {name!r}", EXIT_INPUT)
    return names


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _amount(value: Fraction) -> str:
    return f"{render_rational(value)} ({decimal_rational(value)})"


def _cmd_solve(args) -> int:
    prob = _load_problem(args.problem)
    rules = _parse_rules(args.rules)
    opt = enumerate_optimal(prob)
    results: dict[str, dict[int, Fraction] | None] = {}
    for rule in rules:
        try:
            results[rule.name] = rule(prob).as_dict()
        except RuleUndefined:
            results[rule.name] = None

    if args.format == "json":
        payload = {
            "seed": args.seed,
            "budget": args.budget,
            "problem": prob.to_json_dict(),
            "maximum_output": render_rational(opt.value),
            "optimal_assignments": len(opt.assignments),
            "solutions": {
                name: None
                if pay is None
                else {str(w): render_rational(v) for w, v in pay.items()}
                for name, pay in results.items()
            },
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    elif args.format == "csv":
        lines = [f"# seed={args.seed} budget={args.budget}", "rule,worker,amount,decimal"]
        for name, pay in results.items():
            if pay is None:
                lines.append(f"{name},,undefined,")
                continue
            for w, v in pay.items():
                lines.append(f"{name},{w},{render_rational(v)},{decimal_rational(v)}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        width = max(len(r.name) for r in rules) + 2
        lines = [
            f"seed={args.seed} budget={args.budget}",
            f"workers: {list(prob.workers)}  tasks: {list(prob.tasks)}",
            f"maximum output y = {_amount(opt.value)}",
            f"optimal assignments |A*| = {len(opt.assignments)}",
            "",
        ]
        for name, pay in results.items():
            if pay is None:
                lines.append(f"{name.ljust(width)}undefined on this problem")
            else:
                cells = "  ".join(f"{w}: {_amount(v)}" for w, v in pay.items())
                lines.append(f"{name.ljust(width)}{cells}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_assign(args) -> int:
    prob = _load_problem(args.problem)
    opt = enumerate_optimal(prob)
    used = assigned_task_set(prob)
    if args.format == "json":
        payload = {
            "seed": args.seed,
            "budget": args.budget,
            "maximum_output": render_rational(opt.value),
            "assignments": [a.as_dict() for a in opt.assignments],
            "assigned_task_set": list(used),
        }
        payload["assignments"] = [
            {str(w): t for w, t in a.items()} for a in payload["assignments"]
        ]
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    elif args.format == "csv":
        lines = [f"# seed={args.seed} budget={args.budget}", "assignment,worker,task"]
        for k, a in enumerate(opt.assignments):
            for w, t in a.pairs:
                lines.append(f"{k},{w},{t}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [
            f"seed={args.seed} budget={args.budget}",
            f"maximum output y = {_amount(opt.value)}",
            f"optimal assignments ({len(opt.assignments)}):",
        ]
        for a in opt.assignments:
            lines.append(
                "  " + ", ".join(f"{w} -> {t}" for w, t in a.pairs)
            )
        lines.append(f"tasks used by some optimum: {list(used)}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_axioms(args) -> int:
    rules = _parse_rules(args.rules)
    axioms = _parse_axioms(args.axioms)
    verdicts = [
        falsify(rule, axiom, budget=args.budget, seed=args.seed)
        for axiom in axioms
        for rule in rules
    ]
    if args.format == "json":
        payload = {
            "seed": args.seed,
            "budget": args.budget,
            "verdicts": [
                {
                    "rule": v.rule,
                    "axiom": v.axiom,
                    "verdict": "-" if v.status == VIOLATED else "+",
                    "status": v.status,
                    "evidence": v.evidence,
                    "trials": v.trials,
                    "skipped": v.skipped,
                    "detail": v.detail,
                }
                for v in verdicts
            ],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    elif args.format == "csv":
        lines = [
            f"# seed={args.seed} budget={args.budget}",
            "rule,axiom,verdict,status,evidence,trials,skipped",
        ]
        for v in verdicts:
            symbol = "-" if v.status == VIOLATED else "+"
            lines.append(
                f"{v.rule},{v.axiom},{symbol},{v.status},{v.evidence},{v.trials},{v.skipped}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [f"seed={args.seed} budget={args.budget}"]
        for v in verdicts:
            symbol = "-" if v.status == VIOLATED else "+"
            line = f"{symbol}  {v.rule} / {AXIOMS[v.axiom].label}: {v.status}"
            if v.status == VIOLATED:
                line += f" [{v.evidence}] {v.detail}"
            else:
                line += f" after {v.trials} trials"
                if v.skipped:
                    line += f" ({v.skipped} undefined, skipped)"
            lines.append(line)
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _cmd_table(args) -> int:
    rules = tuple(lookup_rule(name) for name in CONCRETE_RULES)
    if args.include_parametric:
        rules = rules + tuple(
            lookup_rule(f"par-{fn}") for fn in ("const", "mean", "max", "sum")
        )
    report = table_report(rules=rules, budget=args.budget, seed=args.seed)
    if args.format == "json":
        _emit(render_table_json(report), args.out)
    elif args.format == "csv":
        _emit(render_table_csv(report), args.out)
    else:
        _emit(render_table_text(report), args.out)
    return EXIT_OK if not report.mismatches else EXIT_MISMATCH


def _add_common(parser, default_budget=1000):
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=default_budget)
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument("--out", default=None, help="write the report to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faircomp",
        description="Compensation rules and fairness-axiom checks, in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compensate a problem under selected rules")
    p_solve.add_argument("problem", help="problem JSON file")
    p_solve.add_argument("--rules", default=None, help="comma-separated rule names")
    _add_common(p_solve)
    p_solve.set_defaults(fn=_cmd_solve)

    p_assign = sub.add_parser("assign", help="maximum output and all optimal assignments")
    p_assign.add_argument("problem", help="problem JSON file")
    _add_common(p_assign)
    p_assign.set_defaults(fn=_cmd_assign)

    p_axioms = sub.add_parser("axioms", help="falsify selected axioms for selected rules")
    p_axioms.add_argument("--rules", default=None)
    p_axioms.add_argument("--axioms", default=None, help="comma-separated axiom names")
    _add_common(p_axioms)
    p_axioms.set_defaults(fn=_cmd_axioms)

    p_table = sub.add_parser("table", help="full verdict matrix vs the expected one")
    p_table.add_argument(
        "--include-parametric",
        action="store_true",
        help="append informational columns for the built-in parametric rules",
    )
    _add_common(p_table)
    p_table.set_defaults(fn=_cmd_table)

    p_fuzz = sub.add_parser("fuzz", help="axioms run with a large default budget")
    p_fuzz.add_argument("--rules", default=None)
    p_fuzz.add_argument("--axioms", default=None)
    _add_common(p_fuzz, default_budget=10000)
    p_fuzz.set_defaults(fn=_cmd_axioms)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
