import random

import pytest

from mucnf.cnf import CnfFormula


def random_kcnf(rng: random.Random, num_vars: int, num_clauses: int, k: int = 3) -> CnfFormula:
    """Random k-CNF with distinct variables per clause (no tautologies)."""
    clauses = []
    for _ in range(num_clauses):
        variables = rng.sample(range(1, num_vars + 1), k)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    return CnfFormula(num_vars, tuple(clauses))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
