"""Propositional validity: exhaustive truth tables, with DPLL as fallback.

Formulas with at most 16 distinct letters are decided by evaluating every
assignment; larger ones go through a Tseitin encoding of the negation and a
DPLL satisfiability search.  Both paths can be forced for cross-checking.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from ..formula import (
    And, Formula, Iff, Implies, Not, Or, PropAtom, Xor,
    desugar, is_propositional, prop_letters,
)
from .results import ContractViolation, Countermodel, PropResult, Valid

TRUTH_TABLE_LIMIT = 16


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Truth value of a propositional formula under a total assignment."""
    if isinstance(f, PropAtom):
        return assignment[f.name]
    if isinstance(f, Not):
        return not evaluate(f.operand, assignment)
    if isinstance(f, And):
        return evaluate(f.left, assignment) and evaluate(f.right, assignment)
    if isinstance(f, Or):
        return evaluate(f.left, assignment) or evaluate(f.right, assignment)
    if isinstance(f, Xor):
        return evaluate(f.left, assignment) != evaluate(f.right, assignment)
    if isinstance(f, Implies):
        return (not evaluate(f.left, assignment)) or evaluate(f.right, assignment)
    if isinstance(f, Iff):
        return evaluate(f.left, assignment) == evaluate(f.right, assignment)
    raise ContractViolation(f"not a propositional formula: {f!r}")


def prop_validity(f: Formula, method: str = "auto") -> PropResult:
    """Decide whether ``f`` is a tautology.

    Returns :class:`Valid`, or a :class:`Countermodel` whose assignment
    ranges over exactly the letters occurring in ``f`` and falsifies it.
    ``method`` is ``auto`` (size-based choice), ``table``, or ``dpll``.
    """
    if not is_propositional(f):
        raise ContractViolation("prop_validity requires a propositional formula")
    f = desugar(f)
    letters = sorted(prop_letters(f))
    if method == "auto":
        method = "table" if len(letters) <= TRUTH_TABLE_LIMIT else "dpll"
    if method == "table":
        result = _truth_table(f, letters)
    elif method == "dpll":
        result = _dpll_validity(f, letters)
    else:
        raise ValueError(f"unknown method {method!r}")
    if isinstance(result, Countermodel):
        if evaluate(f, result.as_dict()):
            raise AssertionError("internal error: countermodel does not falsify the formula")
    return result


def _truth_table(f: Formula, letters: list[str]) -> PropResult:
    for values in itertools.product((False, True), repeat=len(letters)):
        assignment = dict(zip(letters, values))
        if not evaluate(f, assignment):
            return Countermodel.from_dict(assignment)
    return Valid()


# --- Tseitin encoding and DPLL ---

def _dpll_validity(f: Formula, letters: list[str]) -> PropResult:
    clauses, index = _tseitin(Not(f))
    model = dpll(clauses)
    if model is None:
        return Valid()
    assignment = {name: model.get(var, False) for name, var in index.items()}
    for name in letters:
        assignment.setdefault(name, False)
    return Countermodel.from_dict({name: assignment[name] for name in letters})


def _tseitin(f: Formula) -> tuple[list[list[int]], dict[str, int]]:
    """Clauses asserting ``f``, with one defining variable per subformula."""
    index: dict[str, int] = {}
    clauses: list[list[int]] = []
    counter = itertools.count(1)

    def var_of(g: Formula) -> int:
        if isinstance(g, PropAtom):
            if g.name not in index:
                index[g.name] = next(counter)
            return index[g.name]
        x = next(counter)
        if isinstance(g, Not):
            a = var_of(g.operand)
            clauses.extend([[-x, -a], [x, a]])
        elif isinstance(g, And):
            a, b = var_of(g.left), var_of(g.right)
            clauses.extend([[-x, a], [-x, b], [x, -a, -b]])
        elif isinstance(g, Or):
            a, b = var_of(g.left), var_of(g.right)
            clauses.extend([[-x, a, b], [x, -a], [x, -b]])
        elif isinstance(g, Implies):
            a, b = var_of(g.left), var_of(g.right)
            clauses.extend([[-x, -a, b], [x, a], [x, -b]])
        elif isinstance(g, Iff):
            a, b = var_of(g.left), var_of(g.right)
            clauses.extend([[-x, -a, b], [-x, a, -b], [x, a, b], [x, -a, -b]])
        else:
            raise ContractViolation(f"not a desugared propositional formula: {g!r}")
        return x

    root = var_of(f)
    clauses.append([root])
    return clauses, index


def dpll(clauses: list[list[int]]) -> dict[int, bool] | None:
    """Satisfying assignment for a CNF (variables as positive ints), or None."""
    assignment: dict[int, bool] = {}

    def solve(active: list[frozenset[int]]) -> bool:
        while True:
            unit = next((c for c in active if len(c) == 1), None)
            if unit is None:
                break
            lit = next(iter(unit))
            assignment[abs(lit)] = lit > 0
            active = _assign(active, lit)
            if active is None:
                del assignment[abs(lit)]
                return False
            # keep the deleted binding for backtracking by the caller
        if not active:
            return True
        counts: dict[int, int] = {}
        for c in active:
            for lit in c:
                counts[abs(lit)] = counts.get(abs(lit), 0) + 1
        var = max(counts, key=counts.get)
        for value in (True, False):
            assignment[var] = value
            reduced = _assign(active, var if value else -var)
            if reduced is not None and solve(reduced):
                return True
            del assignment[var]
        return False

    # Failed branches may leave stale entries in `assignment`; those
    # variables are unconstrained on the successful path (every clause is
    # already satisfied without them), so any leftover value is consistent.
    sets = [frozenset(c) for c in clauses]
    if any(not c for c in sets):
        return None
    if solve(sets):
        return assignment
    return None


def _assign(clauses: list[frozenset[int]], lit: int) -> list[frozenset[int]] | None:
    """Simplify clauses under ``lit=true``; None on an empty clause."""
    out: list[frozenset[int]] = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = c - {-lit}
            if not c:
                return None
        out.append(c)
    return out
