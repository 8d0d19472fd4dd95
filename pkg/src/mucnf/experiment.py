"""Batch harness: generate many instances per (k, g), analyze each for
minimal unsatisfiability, and aggregate MU percent plus satisfiability
number statistics.
"""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import IO, List, Optional, Sequence

from .generator import GeneratorParams, generate
from .mu import analyze_mu
from .solver import SolveTimeoutError, make_backend


@dataclass(frozen=True)
class BatchSpec:
    """One experiment row: `count` formulas at (k, g), seeds base_seed + index."""

    k: int
    g: int
    count: int
    base_seed: int
    backend: str = "dpll"
    solver_command: Optional[str] = None
    brute_force_cap: int = 24
    timeout: Optional[float] = None
    early_exit: bool = False
    parallelism: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.parallelism < 1:
            raise ValueError(f"parallelism must be >= 1, got {self.parallelism}")


@dataclass
class FormulaRecord:
    index: int
    seed: int
    clause_count: int
    sat_number: Optional[int]    # None when any deletion was undecided
    is_mu: Optional[bool]
    deletion_bitmap: str
    millis: float
    completed: bool


@dataclass
class BatchStats:
    """Aggregates over the completed formulas of one batch.

    Standard deviation is the sample standard deviation (divisor n-1).
    Timed-out formulas are excluded from the aggregates but counted in
    `excluded`, never silently dropped. Positive/negative deletion rates
    split the per-clause outcomes at the formula's polarity boundary
    (first half all-positive clauses, second half all-negative).
    """

    k: int
    g: int
    count: int
    completed: int
    excluded: int
    clause_number: int
    mu_percent: float
    mean_sat_no: Optional[float]
    std_dev_sat_no: Optional[float]
    pos_deletion_sat_rate: Optional[float]
    neg_deletion_sat_rate: Optional[float]
    elapsed: float
    per_formula: List[FormulaRecord] = field(default_factory=list)


def _run_one(args) -> FormulaRecord:
    index, spec = args
    seed = spec.base_seed + index
    solve = make_backend(
        spec.backend,
        solver_command=spec.solver_command,
        brute_force_cap=spec.brute_force_cap,
        timeout=spec.timeout,
    )
    formula = generate(GeneratorParams(spec.k, spec.g, seed))
    t0 = time.perf_counter()
    try:
        report = analyze_mu(
            formula, solve, early_exit=spec.early_exit, keep_witnesses=False
        )
    except SolveTimeoutError:
        # deadline hit on the initial unsat check: nothing decided
        return FormulaRecord(
            index=index,
            seed=seed,
            clause_count=formula.num_clauses,
            sat_number=None,
            is_mu=None,
            deletion_bitmap="x" * formula.num_clauses,
            millis=(time.perf_counter() - t0) * 1000.0,
            completed=False,
        )
    millis = (time.perf_counter() - t0) * 1000.0
    # early exit leaves entries undecided by design; the record is still
    # complete for MU-percent purposes when the flag is decided
    completed = not report.undecided or (spec.early_exit and report.is_mu is not None)
    return FormulaRecord(
        index=index,
        seed=seed,
        clause_count=report.clause_count,
        sat_number=report.sat_number,
        is_mu=report.is_mu,
        deletion_bitmap=report.deletion_bitmap(),
        millis=millis,
        completed=completed,
    )


def run_batch(spec: BatchSpec) -> BatchStats:
    """Analyze `spec.count` formulas; deterministic apart from timings."""
    t0 = time.perf_counter()
    jobs = [(i, spec) for i in range(spec.count)]
    if spec.parallelism > 1:
        with ProcessPoolExecutor(max_workers=spec.parallelism) as pool:
            records = list(pool.map(_run_one, jobs))
    else:
        records = [_run_one(job) for job in jobs]

    clause_number = GeneratorParams(spec.k, spec.g, spec.base_seed).num_clauses
    done = [r for r in records if r.completed]
    mu_count = sum(1 for r in done if r.is_mu)
    mu_percent = 100.0 * mu_count / len(done) if done else 0.0

    mean_sat = std_sat = None
    pos_rate = neg_rate = None
    if not spec.early_exit and done:
        sat_numbers = [r.sat_number for r in done]
        mean_sat = statistics.fmean(sat_numbers)
        std_sat = statistics.stdev(sat_numbers) if len(sat_numbers) > 1 else 0.0
        half = clause_number // 2
        pos_sat = sum(r.deletion_bitmap[:half].count("1") for r in done)
        neg_sat = sum(r.deletion_bitmap[half:].count("1") for r in done)
        pos_rate = pos_sat / (half * len(done))
        neg_rate = neg_sat / (half * len(done))

    return BatchStats(
        k=spec.k,
        g=spec.g,
        count=spec.count,
        completed=len(done),
        excluded=len(records) - len(done),
        clause_number=clause_number,
        mu_percent=mu_percent,
        mean_sat_no=mean_sat,
        std_dev_sat_no=std_sat,
        pos_deletion_sat_rate=pos_rate,
        neg_deletion_sat_rate=neg_rate,
        elapsed=time.perf_counter() - t0,
        per_formula=records,
    )


def trend_study(
    k: int,
    g_values: Sequence[int],
    count: int,
    base_seed: int,
    **spec_kwargs,
) -> List[BatchStats]:
    """One batch per g, ascending; row i draws seeds from base_seed + i*count."""
    if list(g_values) != sorted(g_values):
        raise ValueError("g values must be ascending")
    results = []
    for i, g in enumerate(g_values):
        spec = BatchSpec(k=k, g=g, count=count, base_seed=base_seed + i * count, **spec_kwargs)
        results.append(run_batch(spec))
    return results


def format_table(rows: Sequence[BatchStats]) -> str:
    """Human-readable table mirroring the experiment columns."""
    header = (
        f"{'k':>3} {'g':>4} {'clauses':>8} {'MU %':>7} "
        f"{'mean sat no':>12} {'std dev':>8} {'pos rate':>9} {'neg rate':>9} {'excl':>5}"
    )
    lines = [header]
    for s in rows:
        mean = f"{s.mean_sat_no:.2f}" if s.mean_sat_no is not None else "-"
        std = f"{s.std_dev_sat_no:.2f}" if s.std_dev_sat_no is not None else "-"
        pos = f"{s.pos_deletion_sat_rate:.4f}" if s.pos_deletion_sat_rate is not None else "-"
        neg = f"{s.neg_deletion_sat_rate:.4f}" if s.neg_deletion_sat_rate is not None else "-"
        lines.append(
            f"{s.k:>3} {s.g:>4} {s.clause_number:>8} {s.mu_percent:>7.1f} "
            f"{mean:>12} {std:>8} {pos:>9} {neg:>9} {s.excluded:>5}"
        )
    return "\n".join(lines)


def write_csv(rows: Sequence[BatchStats], fh: IO[str], timing: bool = False) -> None:
    """Per-formula rows then one summary row per batch.

    Timing columns are opt-in so the default output is byte-identical
    across reruns of the same spec.
    """
    cols = ["k", "g", "seed", "clause_count", "satisfiability_number", "is_mu"]
    if timing:
        cols.append("solve_millis")
    fh.write(",".join(cols) + "\n")
    for s in rows:
        for r in s.per_formula:
            sat_no = "" if r.sat_number is None else str(r.sat_number)
            is_mu = "" if r.is_mu is None else str(r.is_mu).lower()
            row = [str(s.k), str(s.g), str(r.seed), str(r.clause_count), sat_no, is_mu]
            if timing:
                row.append(f"{r.millis:.1f}")
            fh.write(",".join(row) + "\n")
    fh.write("k,g,count,completed,mu_percent,mean_sat_no,std_dev_sat_no\n")
    for s in rows:
        mean = "" if s.mean_sat_no is None else f"{s.mean_sat_no:.4f}"
        std = "" if s.std_dev_sat_no is None else f"{s.std_dev_sat_no:.4f}"
        fh.write(
            f"{s.k},{s.g},{s.count},{s.completed},{s.mu_percent:.2f},{mean},{std}\n"
        )
