"""Command-line entry point.

Exit status: 0 for a definite answer, 2 when the budget ran out before an
answer appeared (exhausted fuel, unknown beyond a bound), 1 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from . import __version__
from . import diophantine as dio
from . import dovetail as dt
from . import primrec
from .enumeration import DEFAULT_GENERATION_BUDGET, enumerate_prefix, machine_at
from .errors import WorkbenchError
from .pidigits import DEFAULT_PRECISION_CAP, UnknownBeyondLimit, run_position
from .tm import DEFAULT_TRACE_CAP, Halted, format_machine, format_trace, parse_machine, run, step, trace

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _natural(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def _positive(text):
    value = _natural(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _naturals(text):
    try:
        values = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated natural numbers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"inputs must be natural numbers, got {text!r}")
    return values


def _emit(args, text):
    """Write ``text`` to ``--out`` when given, else to stdout."""
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _load_machine(args):
    if args.machine is not None:
        try:
            text = Path(args.machine).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"--machine: cannot read {args.machine}: {exc.strerror}") from None
        return parse_machine(text, name=args.machine)
    return machine_at(args.index)


# -- subcommands -----------------------------------------------------------------

def cmd_tm_run(args):
    outcome = run(_load_machine(args), args.input, args.fuel)
    if isinstance(outcome, Halted):
        print(f"halted output={outcome.output} steps={outcome.steps}")
        return EXIT_OK
    print(f"exhausted fuel={outcome.fuel}")
    return EXIT_UNKNOWN


def cmd_tm_trace(args):
    machine = _load_machine(args)
    configs = trace(machine, args.input, args.fuel, cap=args.trace_cap)
    _emit(args, format_trace(configs))
    return EXIT_OK if step(machine, configs[-1]) is None else EXIT_UNKNOWN


def cmd_enumerate(args):
    machines = enumerate_prefix(args.count, budget=args.budget)
    _emit(args, "---\n".join(format_machine(m) for m in machines))
    return EXIT_OK


def cmd_dovetail(args):
    certs = dt.dovetail(args.rounds, cap=args.round_cap)
    rows = [(c.round, c.machine_index, c.input, c.steps, c.output) for c in certs]
    _emit(args, _csv(["round", "n", "x", "steps", "output"], rows))
    return EXIT_OK


def cmd_audit(args):
    try:
        decider, default_fuel = dt.parse_decider(args.decider)
    except ValueError as exc:
        raise UsageError(f"--decider: {exc}") from None
    fuel = args.refutation_fuel if args.refutation_fuel is not None else default_fuel
    found = dt.audit_halting_heuristic(decider, args.limit, fuel)
    if found is None:
        print(f"no refutation found limit={args.limit} refutation_fuel={fuel}")
        return EXIT_UNKNOWN
    c = found.evidence
    print(f"counterexample n={found.n} x={found.x} claim={found.claim.value} "
          f"steps={c.steps} output={c.output}")
    return EXIT_OK


def cmd_primrec_eval(args):
    expr = primrec.parse_expr(args.expr)
    try:
        value = primrec.evaluate(expr, args.args, budget=args.budget)
    except primrec.BudgetExhausted:
        print(f"exhausted budget={args.budget}")
        return EXIT_UNKNOWN
    print(f"value={value}")
    return EXIT_OK


def cmd_dio_solve(args):
    poly = dio.parse_polynomial(args.expr)
    if args.bound is None:
        if poly.degree > 1:
            raise UsageError("--bound is required for equations of degree 2 or more")
        result = dio.solve_linear(poly, domain=args.domain)
    else:
        result = dio.solve(poly, args.bound, domain=args.domain, cap=args.box_cap)
    header = list(poly.variables)
    if isinstance(result, dio.AllSolutionsInBox):
        _emit(args, _csv(header, result.solutions))
        if args.out:
            print(f"solutions={len(result.solutions)} bound={result.bound}")
        return EXIT_OK
    if isinstance(result, dio.DecidedSolvable):
        _emit(args, _csv(header, [result.witness]))
        if args.out:
            print("solvable witnesses=1")
        return EXIT_OK
    if isinstance(result, dio.DecidedUnsolvable):
        print(f"unsolvable reason={result.reason}")
        return EXIT_OK
    print(f"unknown beyond bound={result.bound}")
    return EXIT_UNKNOWN


def cmd_pi_run(args):
    result = run_position(args.x, args.limit, cap=args.precision)
    if isinstance(result, UnknownBeyondLimit):
        print(f"unknown beyond {result.limit}")
        return EXIT_UNKNOWN
    print(f"position={result}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def _machine_source(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--machine", metavar="FILE", help="machine file (one quadruple per line)")
    src.add_argument("--index", type=_natural, metavar="N",
                     help="use machine N of the enumeration instead of a file")
    p.add_argument("--input", type=_naturals, default=[0], metavar="X[,Y...]",
                   help="unary input arguments (default: 0)")


def _add_dio_args(p):
    p.add_argument("--expr", required=True, help='polynomial, e.g. "x1^2 - x2^2 - 3"')
    p.add_argument("--bound", type=_natural, default=None,
                   help="search box bound (optional for degree <= 1)")
    p.add_argument("--domain", choices=dio.DOMAINS, default="nat",
                   help="solution domain: naturals or integers (default: nat)")
    p.add_argument("--box-cap", type=_positive, default=dio.DEFAULT_BOX_CAP,
                   help=f"maximum number of box points (default: {dio.DEFAULT_BOX_CAP})")
    p.add_argument("--out", help="write solutions as CSV to this file")
    p.set_defaults(func=cmd_dio_solve)


def _add_pi_args(p):
    p.add_argument("--x", type=_positive, required=True, help="run length of fives")
    p.add_argument("--limit", type=_natural, required=True, help="number of digits to scan")
    p.add_argument("--precision", type=_positive, default=DEFAULT_PRECISION_CAP,
                   help=f"precision cap in digits (default: {DEFAULT_PRECISION_CAP})")
    p.set_defaults(func=cmd_pi_run)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hilbert10", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tm-run", help="run a Turing machine with a fuel budget")
    _machine_source(p)
    p.add_argument("--fuel", type=_natural, default=10_000, help="step budget (default: 10000)")
    p.set_defaults(func=cmd_tm_run)

    p = sub.add_parser("tm-trace", help="print every configuration of a bounded run")
    _machine_source(p)
    p.add_argument("--fuel", type=_natural, default=100, help="step budget (default: 100)")
    p.add_argument("--trace-cap", type=_positive, default=DEFAULT_TRACE_CAP,
                   help=f"largest fuel allowed for a trace (default: {DEFAULT_TRACE_CAP})")
    p.add_argument("--out", help="write the trace to this file")
    p.set_defaults(func=cmd_tm_trace)

    p = sub.add_parser("enumerate", help="dump a prefix of the machine enumeration")
    p.add_argument("--count", type=_natural, required=True)
    p.add_argument("--format", choices=["text"], default="text")
    p.add_argument("--budget", type=_positive, default=DEFAULT_GENERATION_BUDGET,
                   help="largest prefix allowed")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dovetail", help="list halting (machine, input) pairs by dovetailing")
    p.add_argument("--rounds", type=_positive, required=True)
    p.add_argument("--round-cap", type=_positive, default=dt.DEFAULT_ROUND_CAP,
                   help=f"largest number of rounds allowed (default: {dt.DEFAULT_ROUND_CAP})")
    p.add_argument("--out", help="CSV file for the certificates (default: stdout)")
    p.set_defaults(func=cmd_dovetail)

    p = sub.add_parser("audit", help="look for a refuted divergence claim of a halting decider")
    p.add_argument("--decider", required=True, help="budget:F, diverges or converges")
    p.add_argument("--limit", type=_natural, required=True, help="largest diagonal index searched")
    p.add_argument("--refutation-fuel", type=_natural, default=None,
                   help="fuel used to refute claims (default: 10*F for budget:F, else 1000)")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("primrec-eval", help="evaluate a primitive recursive term")
    p.add_argument("--expr", required=True, help='term, e.g. "rec(P[1,1]; comp(S; P[3,2]))"')
    p.add_argument("--args", type=_naturals, default=[], metavar="X[,Y...]")
    p.add_argument("--budget", type=_positive, default=primrec.DEFAULT_BUDGET,
                   help=f"recursion unfoldings allowed (default: {primrec.DEFAULT_BUDGET})")
    p.set_defaults(func=cmd_primrec_eval)

    _add_dio_args(sub.add_parser("dio-solve", help="solve a Diophantine equation p = 0"))
    dio_p = sub.add_parser("dio", help="Diophantine commands")
    _add_dio_args(dio_p.add_subparsers(dest="dio_command", required=True, parser_class=_Parser)
                  .add_parser("solve", help="solve a Diophantine equation p = 0"))

    _add_pi_args(sub.add_parser("pi-run", help="position of the first run of x fives in pi"))
    pi_p = sub.add_parser("pi", help="pi digit commands")
    _add_pi_args(pi_p.add_subparsers(dest="pi_command", required=True, parser_class=_Parser)
                 .add_parser("run", help="position of the first run of x fives in pi"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (WorkbenchError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
