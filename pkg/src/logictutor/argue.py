"""Checking natural-language argument exercises.

Each submitted sentence is formalized and classified as a claim or an
assumption.  Assumptions open a scope; claims must follow from the active
context; a claim of the shape ``A -> B``, made inside a scope opened by
assumption ``A`` whose most recent verified claim is ``B``, discharges that
scope and adds the implication to the enclosing one.

A claim counts as verified only when it follows from a *small* part of the
context: at most ``inference_width`` statements (default 2) may be combined
in one step.  This keeps single steps surveyable - an argument cannot jump
to its conclusion just because the conclusion happens to follow from the
premises as a whole - while every verified claim is still a semantic
consequence of the premises and open assumptions.

Feedback concerns logical structure only; no type checking of any kind is
performed or reported for these exercises.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .autoform import (
    ASSUMPTION, CLAIM, BackendConfig, BackendError, NotExpressible,
    PromptTemplate, formalize_with_kind,
)
from .formula import And, Formula, Implies, Not, desugar
from .prover import Valid, prop_validity
from .signature import Signature

VERIFIED = "verified"
NOT_ENTAILED = "not-entailed"
FORMALIZATION_ERROR = "formalization-error"
UNVERIFIED = "unverified"

AFFIRMING_CONSEQUENT = "affirming-consequent"
DENYING_ANTECEDENT = "denying-antecedent"

DEFAULT_INFERENCE_WIDTH = 2


@dataclass(frozen=True)
class ArgumentExercise:
    id: str
    signature: Signature  # propositional
    premises: tuple[Formula, ...]
    premise_sentences: tuple[str, ...]
    goal: Formula
    goal_sentence: str = ""


@dataclass(frozen=True)
class ArgumentStep:
    text: str
    kind: str | None  # claim | assumption | discharge; None when formalization failed
    formula: Formula | None
    status: str  # verified | not-entailed | formalization-error | unverified
    fallacy_hint: str | None = None
    detail: str = ""


@dataclass(frozen=True)
class ArgumentReport:
    steps: tuple[ArgumentStep, ...]
    goal_achieved: bool
    open_assumptions: int
    message: str


def _entailed(context: list[Formula], claim: Formula) -> bool:
    conjunction: Formula | None = None
    for f in context:
        conjunction = f if conjunction is None else And(conjunction, f)
    query = claim if conjunction is None else Implies(conjunction, claim)
    return isinstance(prop_validity(query), Valid)


def _entailed_by_small_subset(context: list[Formula], claim: Formula,
                              width: int) -> bool:
    for size in range(0, min(width, len(context)) + 1):
        for subset in itertools.combinations(context, size):
            if _entailed(list(subset), claim):
                return True
    return False


def detect_fallacy_hint(context: list[Formula], claim: Formula) -> str | None:
    """Heuristic hint for a claim that is not entailed by the context.

    Affirming the consequent: the claim is the antecedent of a context
    implication whose consequent is present.  Denying the antecedent: the
    claim negates the consequent of a context implication whose negated
    antecedent is present.  Purely advisory; never affects verification.
    """
    context = [desugar(f) for f in context]
    claim = desugar(claim)
    if _entailed(context, claim):
        raise ValueError("fallacy hints apply only to claims that are not entailed")
    present = set(context)
    for f in context:
        if isinstance(f, Implies):
            if f.left == claim and f.right in present:
                return AFFIRMING_CONSEQUENT
    for f in context:
        if isinstance(f, Implies):
            if claim == Not(f.right) and Not(f.left) in present:
                return DENYING_ANTECEDENT
    return None


def check_argument(ex: ArgumentExercise, sentences: list[str],
                   backend: BackendConfig,
                   budget=None,
                   template: PromptTemplate | None = None,
                   inference_width: int = DEFAULT_INFERENCE_WIDTH) -> ArgumentReport:
    """Check an argument step by step against the exercise premises."""
    scopes: list[list[Formula]] = [[desugar(p) for p in ex.premises]]
    scope_assumption: list[Formula | None] = [None]
    last_verified: list[Formula | None] = [None]
    outermost_claims: list[Formula] = []
    steps: list[ArgumentStep] = []

    def active_context() -> list[Formula]:
        return [f for scope in scopes for f in scope]

    for sentence in sentences:
        if not sentence.strip():
            steps.append(ArgumentStep(sentence, None, None, FORMALIZATION_ERROR,
                                      detail="empty step"))
            continue
        out = formalize_with_kind(backend, ex.signature, sentence, template)
        if isinstance(out, BackendError):
            steps.append(ArgumentStep(sentence, None, None, FORMALIZATION_ERROR,
                                      detail=f"{out.kind}: {out.detail}"))
            continue
        if isinstance(out, NotExpressible):
            steps.append(ArgumentStep(sentence, None, None, FORMALIZATION_ERROR,
                                      detail="not expressible in the exercise notation"))
            continue
        formula = desugar(out.formula)

        if out.step_kind == ASSUMPTION:
            scopes.append([formula])
            scope_assumption.append(formula)
            last_verified.append(None)
            steps.append(ArgumentStep(sentence, ASSUMPTION, formula, VERIFIED,
                                      detail="assumption opens a new scope"))
            continue

        # claim; check for a discharge first
        innermost_assumption = scope_assumption[-1]
        if (innermost_assumption is not None
                and isinstance(formula, Implies)
                and formula.left == innermost_assumption
                and last_verified[-1] is not None
                and formula.right == last_verified[-1]):
            scopes.pop()
            scope_assumption.pop()
            last_verified.pop()
            scopes[-1].append(formula)
            last_verified[-1] = formula
            if len(scopes) == 1:
                outermost_claims.append(formula)
            steps.append(ArgumentStep(sentence, "discharge", formula, VERIFIED,
                                      detail="assumption discharged"))
            continue

        context = active_context()
        if _entailed_by_small_subset(context, formula, inference_width):
            scopes[-1].append(formula)
            last_verified[-1] = formula
            if len(scopes) == 1:
                outermost_claims.append(formula)
            steps.append(ArgumentStep(sentence, CLAIM, formula, VERIFIED))
            continue

        if _entailed(context, formula):
            detail = (f"does not follow from the available statements in a "
                      f"single step (at most {inference_width} statements "
                      f"may be combined)")
            hint = None
        else:
            detail = "does not follow from the available statements"
            hint = detect_fallacy_hint(context, formula)
        steps.append(ArgumentStep(sentence, CLAIM, formula, NOT_ENTAILED,
                                  fallacy_hint=hint, detail=detail))

    goal = desugar(ex.goal)
    goal_achieved = bool(outermost_claims) and _equivalent(outermost_claims[-1], goal)
    open_assumptions = len(scopes) - 1
    if goal_achieved:
        message = "Goal reached: the argument establishes the required conclusion."
    elif open_assumptions:
        message = (f"Goal not reached; {open_assumptions} assumption(s) "
                   f"remain undischarged.")
    else:
        message = "Goal not reached."
    return ArgumentReport(tuple(steps), goal_achieved, open_assumptions, message)


def _equivalent(a: Formula, b: Formula) -> bool:
    return (isinstance(prop_validity(Implies(a, b)), Valid)
            and isinstance(prop_validity(Implies(b, a)), Valid))
