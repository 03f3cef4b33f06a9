"""Independent cross-checks through an off-the-shelf SAT solver (PySAT)."""

from __future__ import annotations

import re

from pysat.formula import CNF
from pysat.solvers import Solver

DEFAULT_SOLVER = "minisat22"


def _load(cnf_text: str) -> CNF:
    formula = CNF(from_string=cnf_text)
    # PySAT takes nv from the clauses; the header may declare unused variables
    header = re.search(r"^p\s+cnf\s+(\d+)\s+\d+", cnf_text, re.MULTILINE)
    if header:
        formula.nv = max(formula.nv, int(header.group(1)))
    return formula


def solve_dimacs(cnf_text: str, solver: str = DEFAULT_SOLVER) -> list[int] | None:
    """Solve a DIMACS document; returns a model or None when unsatisfiable."""
    formula = _load(cnf_text)
    with Solver(name=solver, bootstrap_with=formula.clauses) as s:
        if not s.solve():
            return None
        return list(s.get_model() or [])


def count_models(cnf_text: str, solver: str = DEFAULT_SOLVER, limit: int | None = None) -> int:
    """Count models over all declared variables by blocking-clause enumeration."""
    formula = _load(cnf_text)
    nv = formula.nv
    n = 0
    with Solver(name=solver, bootstrap_with=formula.clauses) as s:
        while s.solve():
            model = {abs(l): l for l in s.get_model() or []}
            # variables absent from every clause are still free choices
            full = [model.get(v, -v) for v in range(1, nv + 1)]
            n += 1
            if limit is not None and n >= limit:
                break
            if not full:
                break
            s.add_clause([-l for l in full])
    return n
