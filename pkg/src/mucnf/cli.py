"""Command-line front end: generate, solve, check-mu, experiment, trend.

Exit codes: 0 success, 2 usage error, 3 DIMACS parse error, 4 timeout,
5 solver-integrity error, 1 other failure. Every run prints its resolved
configuration (including defaulted seeds) to stderr first, so any output
is reproducible from its own log.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from typing import Optional, Sequence

from . import __version__
from .cnf import DimacsParseError, read_dimacs, write_dimacs
from .experiment import BatchSpec, format_table, run_batch, trend_study, write_csv
from .generator import GeneratorParams, generate
from .mu import NotUnsatError, analyze_mu
from .solver import (
    ExternalSolverError,
    SolveTimeoutError,
    SolverIntegrityError,
    make_backend,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_TIMEOUT = 4
EXIT_INTEGRITY = 5


def _add_backend_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--backend", choices=["dpll", "brute", "external"], default="dpll")
    p.add_argument("--solver", metavar="CMD", default=None,
                   help="external solver command (implies --backend external)")
    p.add_argument("--timeout", type=float, default=None, metavar="SECONDS",
                   help="per-solve deadline")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mucnf",
        description="Generate and analyze minimally unsatisfiable k-CNFs.",
    )
    parser.add_argument("--version", action="version", version=f"mucnf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated instance as DIMACS")
    p.add_argument("-k", type=int, required=True, help="clause width (>= 2)")
    p.add_argument("-g", type=int, required=True, help="group count (>= 1)")
    p.add_argument("--seed", type=int, default=None,
                   help="64-bit permutation seed (default: drawn and printed)")
    p.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    p = sub.add_parser("solve", help="decide satisfiability of a DIMACS file")
    p.add_argument("file", help="DIMACS CNF file, or - for stdin")
    _add_backend_flags(p)

    p = sub.add_parser("check-mu", help="minimal-unsatisfiability report for a DIMACS file")
    p.add_argument("file", help="DIMACS CNF file, or - for stdin")
    p.add_argument("--early-exit", action="store_true",
                   help="stop at the first unsat deletion (MU flag only)")
    _add_backend_flags(p)

    p = sub.add_parser("experiment", help="batch MU statistics for one (k, g)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-g", type=int, required=True)
    p.add_argument("-n", "--count", type=int, default=500)
    p.add_argument("--base-seed", type=int, default=None,
                   help="seed for formula 0; formula i uses base-seed + i")
    p.add_argument("--csv", default=None, help="write per-formula and summary CSV here")
    p.add_argument("--timing", action="store_true",
                   help="include solve_millis in the CSV (breaks byte-determinism)")
    p.add_argument("--parallelism", type=int, default=1)
    _add_backend_flags(p)

    p = sub.add_parser("trend", help="experiment over ascending g values")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-g", required=True, help="comma-separated ascending g values")
    p.add_argument("-n", "--count", type=int, default=500)
    p.add_argument("--base-seed", type=int, default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--timing", action="store_true")
    p.add_argument("--parallelism", type=int, default=1)
    _add_backend_flags(p)

    return parser


def _resolve_seed(value: Optional[int], flag: str) -> int:
    if value is not None:
        return value
    seed = secrets.randbits(64)
    print(f"note: {flag} not given; drew {seed}", file=sys.stderr)
    return seed


def _log_config(args: argparse.Namespace) -> None:
    pairs = " ".join(f"{k}={v}" for k, v in sorted(vars(args).items()) if k != "command")
    print(f"config: command={args.command} {pairs}", file=sys.stderr)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _backend_name(args: argparse.Namespace) -> str:
    return "external" if args.solver else args.backend


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "generate":
            args.seed = _resolve_seed(args.seed, "--seed")
            _log_config(args)
            formula = generate(GeneratorParams(args.k, args.g, args.seed))
            text = write_dimacs(formula)
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK

        if args.command == "solve":
            _log_config(args)
            formula = read_dimacs(_read_input(args.file))
            solve = make_backend(_backend_name(args), solver_command=args.solver,
                                 timeout=args.timeout)
            result = solve(formula)
            if result.is_sat:
                print("SAT")
                lits = [v if result.model[v] else -v
                        for v in range(1, formula.num_variables + 1)]
                print("v " + " ".join(map(str, lits)) + " 0")
            else:
                print("UNSAT")
            return EXIT_OK

        if args.command == "check-mu":
            _log_config(args)
            formula = read_dimacs(_read_input(args.file))
            solve = make_backend(_backend_name(args), solver_command=args.solver,
                                 timeout=args.timeout)
            try:
                report = analyze_mu(formula, solve, early_exit=args.early_exit,
                                    keep_witnesses=False)
            except NotUnsatError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 1
            m = report.clause_count
            lo, hi = report.sat_number_range
            sat_no = str(lo) if lo == hi else f"[{lo}, {hi}]"
            verdict = {True: "yes", False: "no", None: "unknown"}[report.is_mu]
            print(f"MU: {verdict}, satisfiability number {sat_no}/{m}")
            print(f"deletions: {report.deletion_bitmap()}")
            return EXIT_OK

        if args.command == "experiment":
            args.base_seed = _resolve_seed(args.base_seed, "--base-seed")
            _log_config(args)
            spec = BatchSpec(
                k=args.k, g=args.g, count=args.count, base_seed=args.base_seed,
                backend=_backend_name(args), solver_command=args.solver,
                timeout=args.timeout, parallelism=args.parallelism,
            )
            stats = run_batch(spec)
            print(format_table([stats]))
            if args.csv:
                with open(args.csv, "w", newline="") as fh:
                    write_csv([stats], fh, timing=args.timing)
            return EXIT_OK

        if args.command == "trend":
            args.base_seed = _resolve_seed(args.base_seed, "--base-seed")
            _log_config(args)
            g_values = [int(tok) for tok in args.g.split(",") if tok]
            rows = trend_study(
                args.k, g_values, args.count, args.base_seed,
                backend=_backend_name(args), solver_command=args.solver,
                timeout=args.timeout, parallelism=args.parallelism,
            )
            print(format_table(rows))
            if args.csv:
                with open(args.csv, "w", newline="") as fh:
                    write_csv(rows, fh, timing=args.timing)
            return EXIT_OK

        parser.error(f"unknown command {args.command!r}")
    except DimacsParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SolveTimeoutError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except SolverIntegrityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ExternalSolverError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
