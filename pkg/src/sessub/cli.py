"""Command-line front end.

Commands: check, subterms, gen, bench.  Exit codes: 0 subtype,
1 not-subtype, 2 usage/parse/validation error, 3 verdict disagreement
under --alg all.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import worstgen
from .inductive import CheckReport, DerivationNode, StepLimitExceeded, derive
from .memo import check_memo
from .oracle import check_simulation
from .subterms import sub_bottom_up, sub_top_down
from .syntax import InvalidSessionType, SessionType, size, validate
from .textio import ParseError, encode_judgement, parse, print_type

EXIT_SUBTYPE = 0
EXIT_NOT_SUBTYPE = 1
EXIT_USAGE = 2
EXIT_DISAGREE = 3


def export_derivation(d: DerivationNode, format: str) -> str:
    if format == "dot":
        lines = ["digraph derivation {"]
        counter = [0]

        def walk(node: DerivationNode) -> int:
            my_id = counter[0]
            counter[0] += 1
            goal = node.judgement.goal
            label = f"{node.rule}\\n{print_type(goal.lhs)} <= {print_type(goal.rhs)}"
            label = label.replace('"', '\\"')
            lines.append(f'  n{my_id} [label="{label}"];')
            for child in node.children:
                cid = walk(child)
                lines.append(f"  n{my_id} -> n{cid};")
            return my_id

        walk(d)
        lines.append("}")
        return "\n".join(lines) + "\n"
    if format == "structured":

        def record(node: DerivationNode) -> dict:
            return {
                "judgement": encode_judgement(node.judgement),
                "rule": node.rule,
                "children": [record(c) for c in node.children],
            }

        return json.dumps(record(d), indent=2) + "\n"
    raise ValueError(f"unknown export format {format!r}")


def _read_type(arg: str) -> SessionType:
    if arg.startswith("@"):
        with open(arg[1:], "r", encoding="utf-8") as fh:
            arg = fh.read()
    return parse(arg)


def _load_validated(arg: str) -> SessionType:
    t = _read_type(arg)
    validate(t, require_closed=True)
    return t


def _print_report(report: CheckReport, out) -> None:
    print(f"[{report.algorithm}] {report.verdict}", file=out)
    print(
        f"  nodes_expanded={report.nodes_expanded} memo_hits={report.memo_hits}"
        f" max_context={report.max_context} max_depth={report.max_depth}"
        f" elapsed={report.elapsed:.6f}s",
        file=out,
    )


def _run_check(args, out, err) -> int:
    t = _load_validated(args.lhs)
    u = _load_validated(args.rhs)
    algs = ["inductive", "memo", "oracle"] if args.alg == "all" else [args.alg]
    if args.tree != "none" and args.alg != "inductive":
        print("error: --tree requires --alg inductive", file=err)
        return EXIT_USAGE
    reports = []
    for alg in algs:
        try:
            if alg == "inductive":
                report = derive(t, u, capture_tree=args.tree != "none", step_limit=args.step_limit)
            elif alg == "memo":
                report = check_memo(t, u, step_limit=args.step_limit)
            else:
                report = check_simulation(t, u)
        except StepLimitExceeded as e:
            print(f"error: [{alg}] {e} (truncated, not a refutation)", file=err)
            return EXIT_USAGE
        reports.append(report)
        _print_report(report, out)
    if args.tree != "none" and reports[0].derivation is not None:
        text = export_derivation(reports[0].derivation, args.tree)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            out.write(text)
    verdicts = {r.subtype for r in reports}
    if len(verdicts) > 1:
        print("error: algorithms disagree", file=err)
        return EXIT_DISAGREE
    return EXIT_SUBTYPE if verdicts.pop() else EXIT_NOT_SUBTYPE


def _run_subterms(args, out, err) -> int:
    t = _read_type(args.type)
    validate(t, require_closed=True)
    td = sub_top_down(t)
    bu = sub_bottom_up(t)
    n = size(t)
    print(f"size = {n}", file=out)
    print(f"sub_top_down ({len(td)} elements, bound {n}):", file=out)
    for s in td:
        print(f"  {print_type(s)}", file=out)
    print(f"sub_bottom_up ({len(bu)} elements, bound {n}):", file=out)
    for s in bu:
        print(f"  {print_type(s)}", file=out)
    ok = len(td) <= n and len(bu) <= n and td.issubset(bu)
    print(f"bounds {'hold' if ok else 'VIOLATED'}", file=out)
    return EXIT_SUBTYPE if ok else EXIT_USAGE


def _run_gen(args, out, err) -> int:
    print(print_type(worstgen.gen_Tk(args.k)), file=out)
    return EXIT_SUBTYPE


def _run_bench(args, out, err) -> int:
    algs = tuple(args.alg.split(",")) if args.alg else worstgen.ALGORITHMS
    rows = worstgen.bench(args.kmax, algorithms=algs, step_limit=args.step_limit)
    header = f"{'k':>3} {'size_sum':>8} {'inductive':>12} {'memo':>12} {'oracle':>8}  truncated"
    print(header, file=out)
    for row in rows:

        def cell(v, alg):
            if alg in row.truncated:
                return "LIMIT"
            return "-" if v is None else str(v)

        print(
            f"{row.k:>3} {row.size_sum:>8} {cell(row.inductive_nodes, 'inductive'):>12}"
            f" {cell(row.memo_nodes, 'memo'):>12} {cell(row.oracle_pairs, 'oracle'):>8}"
            f"  {','.join(row.truncated) or '-'}",
            file=out,
        )
    records = [json.dumps(row.to_record()) for row in rows]
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write("\n".join(records) + "\n")
    else:
        for rec in records:
            print(rec, file=out)
    return EXIT_SUBTYPE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sessub", description="Session-type subtyping toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check lhs <= rhs")
    p_check.add_argument("lhs", help="type expression or @file")
    p_check.add_argument("rhs", help="type expression or @file")
    p_check.add_argument("--alg", choices=["inductive", "memo", "oracle", "all"], default="all")
    p_check.add_argument("--tree", choices=["none", "dot", "structured"], default="none")
    p_check.add_argument("--step-limit", type=int, default=10**8, dest="step_limit")
    p_check.add_argument("--output", default=None)
    p_check.set_defaults(func=_run_check)

    p_sub = sub.add_parser("subterms", help="print subterm sets of a type")
    p_sub.add_argument("type", help="type expression or @file")
    p_sub.set_defaults(func=_run_subterms)

    p_gen = sub.add_parser("gen", help="print the worst-case type T_k")
    p_gen.add_argument("k", type=int)
    p_gen.set_defaults(func=_run_gen)

    p_bench = sub.add_parser("bench", help="run the blowup benchmark")
    p_bench.add_argument("--kmax", type=int, default=5)
    p_bench.add_argument("--alg", default=None, help="comma-separated subset of inductive,memo,oracle")
    p_bench.add_argument("--step-limit", type=int, default=10**8, dest="step_limit")
    p_bench.add_argument("--output", default=None)
    p_bench.set_defaults(func=_run_bench)
    return parser


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.func(args, out, err)
    except (ParseError, InvalidSessionType, OSError, ValueError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
