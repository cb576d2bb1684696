#!/usr/bin/env python
"""
Command-line front end for george_cost.

Subcommands:
- stats: every statistic of one element
- factor: a minimum-cost factorization (greedy where proved, oracle otherwise)
- oracle: exact minimum of a weighted factorization search
- verify: sweep a proved cost formula against the oracle
- conjecture: sweep an open statement about ~B or ~D
- enumerate: list elements with their lengths

Exit codes: 0 ok, 1 usage, 2 counterexample, 3 inconclusive, 4 invalid element.

CSV columns:
- stats: one column per statistic
- factor: position, i, j, cost
- verify: window, tvd, formula, oracle, agree, status, expanded_nodes
- conjecture: conjecture_id, window, expected, observed, note (one row per counterexample)
- enumerate: family, n, window, length
"""
import argparse
import asyncio
import csv
import json
import sys
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import logging
logger = logging.getLogger("george_cost.cli")

from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from .conjectures import check_affB_formula, check_affD_bounds, check_bounded_gap
from .factorization import factor_unbranched, verify_witness
from .groups import enumerate_with_lengths, make_element
from .models import (
    BudgetExhaustedError,
    ConjectureId,
    ConjectureReport,
    Element,
    Family,
    GeorgeError,
    InvalidElementError,
    SweepReport,
    Weight,
    exact_number,
)
from .oracle import min_cost, verify_theorem
from .statistics import statistics_report
from .utils import CONFIG, format_window, log_level, make_descriptor, parse_window, sweep_summary

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_INCONCLUSIVE = 3
EXIT_INVALID_ELEMENT = 4

FAMILY_FLAGS = [family.value for family in Family]


class _ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors with exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["json", "csv", "text"], default="text", help="Report format")
    parser.add_argument("--out", type=str, default=None, help="Write the report to this file instead of stdout")


def _add_group_flags(parser: argparse.ArgumentParser, n_required: bool) -> None:
    parser.add_argument("--type", dest="family", required=True, choices=FAMILY_FLAGS, help="Group family")
    parser.add_argument("-n", type=int, default=None, required=n_required, help="Window size (defaults to the window length)")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="george-cost", description="Costs of factorizations in the George groups")
    subparsers = parser.add_subparsers(dest="command", required=True)

    stats = subparsers.add_parser("stats", help="Print every statistic of an element")
    _add_group_flags(stats, n_required=False)
    stats.add_argument("window", type=str, help='Window such as "[-5,6,7]"')
    _add_output_flags(stats)

    factor = subparsers.add_parser("factor", help="Factor an element at minimum cost")
    _add_group_flags(factor, n_required=False)
    factor.add_argument("window", type=str, help="Window of the element")
    factor.add_argument("--budget", type=int, default=None, help="Oracle budget in cost units (branched families)")
    _add_output_flags(factor)

    oracle = subparsers.add_parser("oracle", help="Search for the exact optimum of a weight")
    _add_group_flags(oracle, n_required=False)
    oracle.add_argument("window", type=str, help="Window of the element")
    oracle.add_argument("--weight", choices=[weight.value for weight in Weight], default=Weight.COST.value)
    oracle.add_argument("--budget", type=int, default=None, help="Search budget in weight units")
    oracle.add_argument("--astar", action="store_true", help="Use the tvd/2 heuristic (cost weight)")
    _add_output_flags(oracle)

    verify = subparsers.add_parser("verify", help="Sweep a proved cost formula against the oracle")
    _add_group_flags(verify, n_required=True)
    verify.add_argument("--max-length", type=int, default=None, help="Length bound (affine default from config)")
    verify.add_argument("--budget", type=int, default=None, help="Oracle budget in cost units")
    verify.add_argument("--astar", action="store_true", help="Use A* instead of Dijkstra")
    verify.add_argument("--jobs", type=int, default=1, help="Worker processes")
    _add_output_flags(verify)

    conjecture = subparsers.add_parser("conjecture", help="Sweep an open statement about ~B or ~D")
    conjecture.add_argument("--id", dest="conjecture_id", required=True, choices=[c.value for c in ConjectureId])
    conjecture.add_argument("--type", dest="family", choices=FAMILY_FLAGS, default=None, help="Family for Bounded_gap")
    conjecture.add_argument("-n", type=int, required=True, help="Window size")
    conjecture.add_argument("--max-length", type=int, default=None, help="Length bound")
    conjecture.add_argument("--k-range", type=int, default=None, help="Also cost the equality candidates with |k| up to this")
    conjecture.add_argument("--jobs", type=int, default=1, help="Worker processes")
    _add_output_flags(conjecture)

    enumerate_ = subparsers.add_parser("enumerate", help="List elements by length")
    _add_group_flags(enumerate_, n_required=True)
    enumerate_.add_argument("--max-length", type=int, default=None, help="Length bound (required in spirit for affine)")
    _add_output_flags(enumerate_)
    return parser


def _parse_element(args: argparse.Namespace) -> Element:
    """Raises DomainError on bad flags, InvalidElementError on a bad window."""
    window = parse_window(args.window)
    n = args.n if args.n is not None else len(window)
    descriptor = make_descriptor(args.family, n)
    return make_element(descriptor, window)


class _Output:
    """Writes one report in the requested format."""

    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream

    def json(self, payload: Any) -> None:
        self.stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")

    def csv(self, columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> None:
        writer = csv.DictWriter(self.stream, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _csv_cell(value) for key, value in row.items()})

    def table(self, title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        table = Table(title=title)
        for column in columns:
            table.add_column(column)
        for row in rows:
            table.add_row(*("-" if value is None else str(value) for value in row))
        Console(file=self.stream, width=120).print(table)


def _csv_cell(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return format_window(value)
    return value


def _stats(args: argparse.Namespace, out: _Output) -> int:
    w = _parse_element(args)
    report = statistics_report(w).model_dump()
    if out.fmt == "json":
        out.json(report)
    elif out.fmt == "csv":
        out.csv(list(report), [report])
    else:
        out.table(f"{w} in {w.descriptor.label()}", ["statistic", "value"], report.items())
    return EXIT_OK


def _factor(args: argparse.Namespace, out: _Output) -> int:
    w = _parse_element(args)
    if w.descriptor.is_unbranched:
        factorization, method = factor_unbranched(w), "greedy"
    else:
        factorization, method = min_cost(w, Weight.COST, budget=args.budget).witness, "oracle"
    check = verify_witness(w, factorization)
    # the oracle witness is optimal by construction
    optimal = True if method == "oracle" else check.optimal
    payload = factorization.to_json_dict(optimal=optimal)
    payload["method"] = method
    payload["element"] = w.to_json_dict()
    rows = [
        {"position": k, "i": t.i, "j": t.j, "cost": exact_number(t.doubled_cost)}
        for k, t in enumerate(factorization.factors, start=1)
    ]
    if out.fmt == "json":
        out.json(payload)
    elif out.fmt == "csv":
        out.csv(CONFIG["csv"]["FACTOR_COLUMNS"], rows)
    else:
        out.table(
            f"{w} = product of {len(rows)} transpositions, cost {payload['total_cost']} ({method})",
            ["position", "transposition", "cost"],
            [(row["position"], f"<({row['i']} {row['j']})>", row["cost"]) for row in rows],
        )
    return EXIT_OK


def _oracle(args: argparse.Namespace, out: _Output) -> int:
    w = _parse_element(args)
    weight = Weight(args.weight)
    result = min_cost(w, weight, budget=args.budget, heuristic=args.astar)
    payload = {
        "element": w.to_json_dict(),
        "weight": weight.value,
        "optimum": exact_number(result.doubled_optimum),
        "witness": result.witness.to_json_dict(optimal=True),
        "expanded_nodes": result.expanded_nodes,
        "budget": exact_number(result.budget_used),
        "heuristic": result.heuristic,
        "frontier_cost": result.frontier_cost,
    }
    if out.fmt == "json":
        out.json(payload)
    elif out.fmt == "csv":
        columns = ["weight", "optimum", "expanded_nodes", "budget", "heuristic", "frontier_cost"]
        out.csv(columns, [payload])
    else:
        witness = " ".join(str(t) for t in result.witness.factors) or "(empty)"
        out.table(
            f"{weight.value} optimum of {w} in {w.descriptor.label()}",
            ["optimum", "witness", "expanded nodes"],
            [(payload["optimum"], witness, result.expanded_nodes)],
        )
    return EXIT_OK


def _sweep_exit_code(disagree: int, inconclusive: int) -> int:
    if disagree:
        return EXIT_COUNTEREXAMPLE
    if inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _verify(args: argparse.Namespace, out: _Output) -> int:
    descriptor = make_descriptor(args.family, args.n)
    report: SweepReport = asyncio.run(
        verify_theorem(descriptor, bound=args.max_length, jobs=args.jobs, heuristic=args.astar, budget=args.budget)
    )
    summary = sweep_summary(report)
    rows = [row.model_dump() for row in report.rows]
    if out.fmt == "json":
        out.json({"summary": summary, "rows": rows})
    elif out.fmt == "csv":
        out.csv(CONFIG["csv"]["SWEEP_COLUMNS"], rows)
    else:
        out.table(
            f"{descriptor.label()}: {report.agree}/{report.tested} agree, max deviation {report.max_deviation}",
            ["window", "tvd", "formula", "oracle", "status"],
            [(format_window(r["window"]), r["tvd"], r["formula"], r["oracle"], r["status"]) for r in rows],
        )
    return _sweep_exit_code(report.disagree, report.inconclusive)


def _all_reports(report: ConjectureReport) -> List[ConjectureReport]:
    reports = [report]
    for related in report.related:
        reports.extend(_all_reports(related))
    return reports


def _conjecture(args: argparse.Namespace, out: _Output) -> int:
    conjecture_id = ConjectureId(args.conjecture_id)
    if conjecture_id is ConjectureId.AFF_B_FORMULA:
        coroutine = check_affB_formula(args.n, args.max_length, jobs=args.jobs)
    elif conjecture_id is ConjectureId.BOUNDED_GAP:
        if args.family is None:
            raise GeorgeError("Bounded_gap needs --type")
        coroutine = check_bounded_gap(make_descriptor(args.family, args.n), args.max_length, jobs=args.jobs)
    else:
        k_range = args.k_range
        if k_range is None and conjecture_id is ConjectureId.AFF_D_EQUALITY_CLASS:
            k_range = CONFIG["conjectures"].get("EQUALITY_K_RANGE", 1)
        coroutine = check_affD_bounds(args.n, args.max_length, jobs=args.jobs, k_range=k_range)
    report: ConjectureReport = asyncio.run(coroutine)
    if conjecture_id is ConjectureId.AFF_D_EQUALITY_CLASS:
        report = report.related[0]

    reports = _all_reports(report)
    counterexamples = sum(len(r.counterexamples) for r in reports)
    inconclusive = sum(len(r.inconclusive) for r in reports)
    if out.fmt == "json":
        out.json(report.model_dump(mode="json"))
    elif out.fmt == "csv":
        rows = [
            {"conjecture_id": r.conjecture_id.value, **c.model_dump()}
            for r in reports
            for c in r.counterexamples
        ]
        out.csv(CONFIG["csv"]["CONJECTURE_COLUMNS"], rows)
    else:
        out.table(
            f"Conjecture sweeps in {report.descriptor.label()} up to length {report.length_bound}",
            ["conjecture", "tested", "agree", "counterexamples", "inconclusive", "max gap", "equality cases"],
            [
                (
                    r.conjecture_id.value,
                    r.tested,
                    r.agree,
                    len(r.counterexamples),
                    len(r.inconclusive),
                    r.max_gap,
                    ", ".join(format_window(e) for e in r.equality_cases) or None,
                )
                for r in reports
            ],
        )
    return _sweep_exit_code(counterexamples, inconclusive)


def _enumerate(args: argparse.Namespace, out: _Output) -> int:
    descriptor = make_descriptor(args.family, args.n)
    max_length = args.max_length
    if max_length is None:
        # BFS stops on its own once a finite group is exhausted
        max_length = CONFIG["sweeps"].get("DEFAULT_MAX_LENGTH", 6) if descriptor.is_affine else descriptor.n ** 2
    rows = [
        {"family": descriptor.family.value, "n": descriptor.n, "window": list(w.window), "length": length}
        for w, length in enumerate_with_lengths(descriptor, max_length)
    ]
    if out.fmt == "json":
        out.json(rows)
    elif out.fmt == "csv":
        out.csv(CONFIG["csv"]["ENUMERATE_COLUMNS"], rows)
    else:
        out.table(
            f"{len(rows)} elements of {descriptor.label()}",
            ["window", "length"],
            [(format_window(row["window"]), row["length"]) for row in rows],
        )
    return EXIT_OK


COMMANDS = {
    "stats": _stats,
    "factor": _factor,
    "oracle": _oracle,
    "verify": _verify,
    "conjecture": _conjecture,
    "enumerate": _enumerate,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv, run one subcommand and return its exit code.
    Usage errors exit through the parser with code 1.
    """
    args = build_parser().parse_args(argv)
    stream = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        return COMMANDS[args.command](args, _Output(args.format, stream))
    except InvalidElementError as e:
        logger.error(f"Invalid element: {e}")
        for violation in e.violations:
            print(violation, file=sys.stderr)
        return EXIT_INVALID_ELEMENT
    except BudgetExhaustedError as e:
        logger.error(f"Inconclusive: {e} ({e.expanded_nodes} expansions)")
        return EXIT_INCONCLUSIVE
    except GeorgeError as e:
        logger.error(str(e))
        print(f"george-cost: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.out:
            stream.close()
            logger.info(f"Report saved to {args.out}")


def main():
    """Main entry point."""
    # Load environment variables from .env file if present
    load_dotenv()
    logging.basicConfig(
        level=log_level(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    sys.exit(run())


if __name__ == "__main__":
    main()
