"""Minimal-unsatisfiability analysis by single-clause deletion.

A formula's satisfiability number counts the clauses whose individual
removal leaves a satisfiable formula; the formula is minimally
unsatisfiable (MU) exactly when that number equals the clause count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from .cnf import Assignment, CnfFormula, evaluate
from .generator import GeneratedInstance, GeneratorParams, build_instance
from .solver import SolveResult, SolveTimeoutError, SolverIntegrityError

SolveFn = Callable[[CnfFormula], SolveResult]


class NotUnsatError(ValueError):
    """analyze_mu was given a satisfiable formula; MU is undefined."""


def delete_clause(formula: CnfFormula, index: int) -> CnfFormula:
    """Formula with clause `index` removed; order and variable count unchanged."""
    if not 0 <= index < len(formula.clauses):
        raise IndexError(
            f"clause index {index} out of range [0, {len(formula.clauses)})"
        )
    clauses = formula.clauses[:index] + formula.clauses[index + 1:]
    return CnfFormula(formula.num_variables, clauses, formula.comments)


@dataclass
class MuReport:
    """Per-clause deletion outcomes for an unsatisfiable formula.

    deletion_sat[i] is True / False for a decided deletion and None when
    the solve timed out or was skipped by early exit. With undecided
    entries the satisfiability number is only bracketed and the MU flag
    may be unknown (None).
    """

    clause_count: int
    deletion_sat: Tuple[Optional[bool], ...]
    witnesses: Dict[int, Assignment] = field(default_factory=dict)

    @property
    def sat_number_range(self) -> Tuple[int, int]:
        lo = sum(1 for s in self.deletion_sat if s is True)
        hi = self.clause_count - sum(1 for s in self.deletion_sat if s is False)
        return lo, hi

    @property
    def sat_number(self) -> Optional[int]:
        lo, hi = self.sat_number_range
        return lo if lo == hi else None

    @property
    def is_mu(self) -> Optional[bool]:
        lo, hi = self.sat_number_range
        if hi < self.clause_count:
            return False
        if lo == self.clause_count:
            return True
        return None

    @property
    def undecided(self) -> Tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.deletion_sat) if s is None)

    def deletion_bitmap(self) -> str:
        """One character per clause: '1' sat after deletion, '0' unsat, 'x' undecided."""
        return "".join(
            "1" if s is True else "0" if s is False else "x" for s in self.deletion_sat
        )

    def to_record(self, formula_id: str) -> dict:
        lo, hi = self.sat_number_range
        return {
            "formula_id": formula_id,
            "clause_count": self.clause_count,
            "sat_number": self.sat_number if self.sat_number is not None else f"{lo}-{hi}",
            "is_mu": self.is_mu,
            "deletion_bitmap": self.deletion_bitmap(),
        }


def analyze_mu(
    formula: CnfFormula,
    solve: SolveFn,
    early_exit: bool = False,
    keep_witnesses: bool = True,
) -> MuReport:
    """Solve every single-clause deletion of an unsatisfiable formula.

    Deletions run in clause-index order. With early_exit, analysis stops
    at the first unsat deletion (enough to refute MU); remaining entries
    are left undecided. Per-deletion timeouts are recorded as undecided
    rather than aborting the report. Every sat outcome's witness is
    re-verified with evaluate() before it is trusted.
    """
    base = solve(formula)
    if base.is_sat:
        raise NotUnsatError("formula is satisfiable; minimal unsatisfiability is undefined")

    m = len(formula.clauses)
    outcomes: list[Optional[bool]] = [None] * m
    witnesses: Dict[int, Assignment] = {}
    for i in range(m):
        try:
            result = solve(delete_clause(formula, i))
        except SolveTimeoutError:
            continue
        if result.is_sat:
            if not evaluate(delete_clause(formula, i), result.model):
                raise SolverIntegrityError(
                    f"backend returned a non-verifying model for deletion {i}"
                )
            outcomes[i] = True
            if keep_witnesses:
                witnesses[i] = result.model
        else:
            outcomes[i] = False
            if early_exit:
                break
    return MuReport(m, tuple(outcomes), witnesses)


def first_deletion_witness(
    source: GeneratorParams | GeneratedInstance, solve: SolveFn
) -> Tuple[bool, Optional[Assignment]]:
    """Search for a witness of the canonical first-clause deletion.

    The generated formula's clause 0 is the positive clause on variables
    1..k. This drops it, pins those k variables false and the rest of the
    first cell true (the assignment shape whose cell counts no longer
    force unsatisfiability), and lets the solver settle the remaining
    cells. Returns (found, verified assignment or None); found=False only
    means no witness of this restricted shape exists.
    """
    instance = source if isinstance(source, GeneratedInstance) else build_instance(source)
    params = instance.params
    reduced = delete_clause(instance.formula, 0)
    first_cell = instance.p_cells[0]
    units = tuple(
        (-v,) if v <= params.k else (v,) for v in first_cell
    )
    constrained = CnfFormula(
        reduced.num_variables, units + reduced.clauses, reduced.comments
    )
    result = solve(constrained)
    if not result.is_sat:
        return False, None
    if not evaluate(reduced, result.model):
        raise SolverIntegrityError("witness search returned a non-verifying model")
    return True, result.model
