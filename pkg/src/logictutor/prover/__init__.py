"""Validity checking and two-directional equivalence classification.

Propositional queries are decided outright; first-order queries are
semi-decided by tableau within a :class:`ProofBudget`, except that
equality-free monadic queries are routed to an exact decision procedure.
An unprovable direction is reported as ``Unknown`` rather than as a
refutation, so callers can phrase it as a failure to verify.
"""

from __future__ import annotations

from ..formula import Formula, Implies, desugar, free_variables, is_propositional
from .monadic import decide_monadic, is_monadic
from .prop import evaluate, prop_validity
from .results import (
    EQUIVALENT,
    NECESSARY_NOT_SUFFICIENT,
    NEITHER,
    PARTIALLY_UNVERIFIED,
    SUFFICIENT_NOT_NECESSARY,
    ContractViolation,
    Countermodel,
    DirectionalEquivalence,
    FiniteModel,
    FolResult,
    ProofBudget,
    PropResult,
    Proved,
    RefutedBySmallModel,
    Unknown,
    Valid,
    Verdict,
    is_proved,
    is_refuted,
    is_unknown,
)
from .tableau import equality_axioms, tableau_validity

# The exact monadic procedure runs unbudgeted, so route a query to it only
# when its model space (profile sets x constant placements) is small enough
# to sweep in well under a second; otherwise the budgeted tableau handles it.
MONADIC_ENUMERATION_LIMIT = 300_000

__all__ = [
    "EQUIVALENT", "NECESSARY_NOT_SUFFICIENT", "NEITHER",
    "PARTIALLY_UNVERIFIED", "SUFFICIENT_NOT_NECESSARY",
    "ContractViolation", "Countermodel", "DirectionalEquivalence",
    "FiniteModel", "FolResult", "ProofBudget", "PropResult", "Proved",
    "RefutedBySmallModel", "Unknown", "Valid", "Verdict",
    "check_equivalence", "classify_verdict", "decide_monadic",
    "equality_axioms", "evaluate", "fol_validity", "is_monadic",
    "is_proved", "is_refuted", "is_unknown", "prop_validity",
    "tableau_validity",
]


def fol_validity(f: Formula, budget: ProofBudget) -> FolResult:
    """Validity of a closed first-order formula, within a budget.

    Equality-free monadic formulas get a definite answer (``Proved`` or
    ``RefutedBySmallModel``); everything else runs through the tableau and
    may come back ``Unknown``.
    """
    f = desugar(f)
    if free_variables(f):
        raise ContractViolation("fol_validity requires a closed formula")
    if is_monadic(f):
        from ..formula import constants, predicates
        profiles = 2 ** len(predicates(f))
        sweep = (2 ** profiles) * (profiles ** len(constants(f)))
        if sweep <= MONADIC_ENUMERATION_LIMIT:
            result = decide_monadic(f)
            return Proved() if isinstance(result, Valid) else result
    return tableau_validity(f, budget)


def check_equivalence(user: Formula, gold: Formula,
                      budget: ProofBudget | None = None) -> DirectionalEquivalence:
    """Prove ``user -> gold`` (forward) and ``gold -> user`` (backward).

    Both formulas must be of the same logic kind.  The wall clock of the
    budget is split evenly between the two directions.
    """
    budget = budget or ProofBudget()
    user, gold = desugar(user), desugar(gold)
    user_prop, gold_prop = is_propositional(user), is_propositional(gold)
    if user_prop != gold_prop:
        raise ContractViolation("cannot compare propositional and first-order formulas")
    if user_prop:
        return DirectionalEquivalence(
            forward=prop_validity(Implies(user, gold)),
            backward=prop_validity(Implies(gold, user)),
        )
    half = budget.split()
    return DirectionalEquivalence(
        forward=fol_validity(Implies(user, gold), half),
        backward=fol_validity(Implies(gold, user), half),
    )


def classify_verdict(d: DirectionalEquivalence) -> Verdict:
    """Map the two proof outcomes onto the feedback taxonomy.

    The user's statement is *sufficient* when it implies the expected one
    and *necessary* when the expected one implies it; an ``Unknown`` in
    either direction dominates and is reported as unverified.
    """
    unknown = tuple(
        name for name, r in (("forward", d.forward), ("backward", d.backward))
        if is_unknown(r))
    if unknown:
        return Verdict(PARTIALLY_UNVERIFIED, unknown)
    fwd, bwd = is_proved(d.forward), is_proved(d.backward)
    if fwd and bwd:
        return Verdict(EQUIVALENT)
    if fwd:
        return Verdict(SUFFICIENT_NOT_NECESSARY)
    if bwd:
        return Verdict(NECESSARY_NOT_SUFFICIENT)
    return Verdict(NEITHER)
