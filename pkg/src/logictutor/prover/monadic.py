"""Decision procedure for equality-free monadic first-order formulas.

Such formulas have the small-model property: a formula over k unary
predicates is valid iff it holds in every structure with at most 2^k
elements.  Since only the predicate profile of an element matters (there is
no equality to count duplicates with), it suffices to enumerate the possible
*sets of realized profiles* - each stands for one structure of size at most
2^k - together with every way of placing the constants.  The procedure
always answers definitely; its cost grows doubly exponentially in the
number of predicates, which keeps it practical for the handful of
predicates tutoring exercises use.
"""

from __future__ import annotations

import itertools
from typing import Mapping

from ..formula import (
    And, Equal, Exists, Forall, Formula, Iff, Implies, Not, Or, Pred,
    PropAtom, Var, constants, desugar, free_variables, predicates,
)
from .results import ContractViolation, FiniteModel, RefutedBySmallModel, Valid

MonadicResult = Valid | RefutedBySmallModel


def is_monadic(f: Formula) -> bool:
    """Equality-free with unary predicates only (constants are allowed)."""
    def check(g: Formula) -> bool:
        if isinstance(g, (Equal,)):
            return False
        if isinstance(g, Pred):
            return len(g.args) == 1
        if isinstance(g, PropAtom):
            return True
        if isinstance(g, Not):
            return check(g.operand)
        if isinstance(g, (And, Or, Implies, Iff)):
            return check(g.left) and check(g.right)
        if isinstance(g, (Forall, Exists)):
            return check(g.body)
        return False
    return check(desugar(f))


def decide_monadic(f: Formula) -> MonadicResult:
    """Decide validity of a closed, equality-free, monadic formula."""
    f = desugar(f)
    if free_variables(f):
        raise ContractViolation("decide_monadic requires a closed formula")
    if not is_monadic(f):
        raise ContractViolation(
            "decide_monadic requires unary predicates and no equality")
    pred_names = sorted(predicates(f))
    const_names = sorted(constants(f))
    pred_index = {name: i for i, name in enumerate(pred_names)}
    profiles = list(itertools.product((False, True), repeat=len(pred_names)))

    for size in range(1, len(profiles) + 1):
        for realized in itertools.combinations(profiles, size):
            for placement in itertools.product(range(size), repeat=len(const_names)):
                consts = dict(zip(const_names, placement))
                if not _eval(f, realized, pred_index, consts, {}):
                    return RefutedBySmallModel(_describe(
                        realized, pred_names, consts))
    return Valid()


def _eval(f: Formula,
          realized: tuple[tuple[bool, ...], ...],
          pred_index: Mapping[str, int],
          consts: Mapping[str, int],
          env: dict[str, int]) -> bool:
    if isinstance(f, Pred):
        arg = f.args[0]
        element = env[arg.name] if isinstance(arg, Var) else consts[arg.name]
        return realized[element][pred_index[f.name]]
    if isinstance(f, PropAtom):
        raise ContractViolation(f"proposition letter {f.name!r} in a first-order query")
    if isinstance(f, Not):
        return not _eval(f.operand, realized, pred_index, consts, env)
    if isinstance(f, And):
        return (_eval(f.left, realized, pred_index, consts, env)
                and _eval(f.right, realized, pred_index, consts, env))
    if isinstance(f, Or):
        return (_eval(f.left, realized, pred_index, consts, env)
                or _eval(f.right, realized, pred_index, consts, env))
    if isinstance(f, Implies):
        return ((not _eval(f.left, realized, pred_index, consts, env))
                or _eval(f.right, realized, pred_index, consts, env))
    if isinstance(f, Iff):
        return (_eval(f.left, realized, pred_index, consts, env)
                == _eval(f.right, realized, pred_index, consts, env))
    if isinstance(f, (Forall, Exists)):
        results = (
            _eval(f.body, realized, pred_index, consts, env | {f.var: d})
            for d in range(len(realized)))
        return all(results) if isinstance(f, Forall) else any(results)
    raise TypeError(f"not a formula: {f!r}")


def _describe(realized, pred_names, consts) -> FiniteModel:
    extensions = tuple(
        (name, tuple(profile[i] for profile in realized))
        for i, name in enumerate(pred_names))
    return FiniteModel(
        size=len(realized),
        predicates=extensions,
        constants=tuple(sorted(consts.items())),
    )
