"""Command line front end.

Output protocol: one ``v <atoms> 0`` line per model (``m <clause indices> 0``
with ``--mcs``), then ``c models <count> complete <yes|no>``. Exit status is 0
for a complete enumeration, 10 when a limit stopped it and 1 on bad input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import dimacs
from .engine import DEFAULT_SHRINK_BUDGET, circ_enumerate

EXIT_COMPLETE = 0
EXIT_LIMIT = 10
EXIT_ERROR = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="circenum", description="Enumerate the preferred models of a circumscribed CNF theory.")
    p.add_argument("input", help="DIMACS file with optional m/z lines, or - for stdin")
    p.add_argument("-n", dest="max_models", type=_nonnegative, default=0, metavar="N",
                   help="stop after N models (0 = all)")
    p.add_argument("--circ-wit", dest="max_witnesses", type=_nonnegative, default=0, metavar="N",
                   help="at most N witnesses per minimal model (0 = all, 1 = no witness enumeration)")
    p.add_argument("--mcs", action="store_true", help="enumerate minimal correction subsets of the clauses")
    p.add_argument("--shrink-budget", type=_nonnegative, default=DEFAULT_SHRINK_BUDGET, metavar="CONFLICTS",
                   help="conflict budget per core shrinking attempt (0 disables shrinking)")
    p.add_argument("--stats", action="store_true", help="print counters as 'c stat' lines on stderr")
    p.add_argument("-v", "--verbose", action="store_true", help=argparse.SUPPRESS)
    return p


def run_cli(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_COMPLETE if e.code in (0, None) else EXIT_ERROR
    if args.verbose:
        logging.basicConfig(level=logging.DEBUG, stream=stderr)

    mode = dimacs.MCS if args.mcs else dimacs.CIRC
    try:
        if args.input == "-":
            pf = dimacs.parse(stdin, mode)
        else:
            pf = dimacs.parse(args.input, mode)
    except (OSError, dimacs.ParseError) as e:
        print(f"c error: {e}", file=stderr)
        return EXIT_ERROR

    if args.mcs:
        instance, selectors = dimacs.mcs_transform(pf)
        max_witnesses = 1

        def line(model: frozenset) -> str:
            return " ".join(["m"] + [str(selectors[s]) for s in sorted(model)] + ["0"])
    else:
        instance = dimacs.to_instance(pf)
        max_witnesses = args.max_witnesses

        def line(model: frozenset) -> str:
            return " ".join(["v"] + [str(a) for a in sorted(model)] + ["0"])

    def sink(model: frozenset) -> None:
        stdout.write(line(model) + "\n")
        stdout.flush()

    report = circ_enumerate(
        instance, sink,
        max_models=args.max_models,
        max_witnesses=max_witnesses,
        shrink_budget=args.shrink_budget,
    )
    stdout.write(f"c models {report.models} complete {'yes' if report.complete else 'no'}\n")
    stdout.flush()
    if args.stats:
        for name, val in report.stats.items():
            print(f"c stat {name} {val}", file=stderr)
    return EXIT_COMPLETE if report.complete else EXIT_LIMIT


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
