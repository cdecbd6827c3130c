"""Checking pipeline for deformalization and formalization exercises.

An exercise stores a notation block, a template sentence, and its expected
formalization; the same exercise serves both directions.  Deformalization
answers run through: formalize the student's sentence, prove both
implications against the expected formula, classify the verdict, and grade
simplicity only when the answer is logically equivalent.  Formalization
answers skip the backend and go straight to parsing and proving.

No path raises: every outcome, including backend failures, becomes a
report with a human-readable message.  Unprovable directions are always
phrased as failures to verify.
"""

from __future__ import annotations

from dataclasses import dataclass

from .autoform import (
    REFUSED, BackendConfig, BackendError, FormalizationOutput, NotExpressible,
    PromptTemplate, formalize,
)
from .formula import Formula, ParseError, check_well_formed, parse_formula
from .grader import HIGH, LOW, SimplicityScore, simplicity_score
from .prover import (
    EQUIVALENT, NECESSARY_NOT_SUFFICIENT, NEITHER, PARTIALLY_UNVERIFIED,
    SUFFICIENT_NOT_NECESSARY, Countermodel, DirectionalEquivalence,
    ProofBudget, Verdict, check_equivalence, classify_verdict,
)
from .signature import Signature

MODES = ("formalize", "deformalize")


@dataclass(frozen=True)
class Exercise:
    id: str
    signature: Signature
    sentence: str  # template solution; hidden in deformalization mode
    gold: Formula

    @property
    def modes(self) -> tuple[str, ...]:
        return MODES


@dataclass(frozen=True)
class DeformalizationReport:
    echo: FormalizationOutput
    directional: DirectionalEquivalence | None
    verdict: Verdict | None
    simplicity: SimplicityScore | None
    countermodels: dict[str, dict[str, bool]]
    message: str


@dataclass(frozen=True)
class FormalizationReport:
    parse_ok: bool
    errors: tuple[ParseError, ...]
    directional: DirectionalEquivalence | None
    verdict: Verdict | None
    countermodels: dict[str, dict[str, bool]]
    message: str


def _collect_countermodels(d: DirectionalEquivalence) -> dict[str, dict[str, bool]]:
    out: dict[str, dict[str, bool]] = {}
    for name, result in (("forward", d.forward), ("backward", d.backward)):
        if isinstance(result, Countermodel):
            out[name] = result.as_dict()
    return out


def _render_assignment(assignment: dict[str, bool]) -> str:
    return ", ".join(f"{k}={'true' if v else 'false'}"
                     for k, v in sorted(assignment.items()))


def _simplicity_sentence(simplicity: SimplicityScore) -> str:
    shown = f"{simplicity.display_value:.2f}"
    if simplicity.band == HIGH:
        return f"It is naturally phrased (simplicity {shown}/10)."
    if simplicity.band == LOW:
        return (f"It is much more complicated than necessary "
                f"(simplicity {shown}/10); try your hand at further simplifications.")
    return (f"It is somewhat more complicated than necessary "
            f"(simplicity {shown}/10); try your hand at further simplifications.")


def compose_feedback(verdict: Verdict | None,
                     simplicity: SimplicityScore | None,
                     countermodels: dict[str, dict[str, bool]]) -> str:
    """Deterministic feedback template keyed by verdict and simplicity band."""
    if verdict is None:
        return "No verdict is available."
    sentences: list[str] = []
    if verdict.kind == EQUIVALENT:
        sentences.append("Your answer is logically equivalent to the expected solution.")
        if simplicity is not None:
            sentences.append(_simplicity_sentence(simplicity))
    elif verdict.kind == SUFFICIENT_NOT_NECESSARY:
        sentences.append("Your statement is sufficient but not necessary for the expected one.")
        sentences.append("The implication from your statement to the expected one "
                         "could be verified, but the converse direction could not: "
                         "it is refuted.")
        if "backward" in countermodels:
            sentences.append(f"For instance, {_render_assignment(countermodels['backward'])} "
                             f"falsifies the converse direction.")
    elif verdict.kind == NECESSARY_NOT_SUFFICIENT:
        sentences.append("Your statement is necessary but not sufficient for the expected one.")
        sentences.append("The implication from the expected statement to yours "
                         "could be verified, but the converse direction could not: "
                         "it is refuted.")
        if "forward" in countermodels:
            sentences.append(f"For instance, {_render_assignment(countermodels['forward'])} "
                             f"falsifies the converse direction.")
    elif verdict.kind == NEITHER:
        sentences.append("Your statement is neither sufficient nor necessary "
                         "for the expected one.")
        for name, assignment in sorted(countermodels.items()):
            sentences.append(f"The {name} implication fails, for instance, under "
                             f"{_render_assignment(assignment)}.")
    elif verdict.kind == PARTIALLY_UNVERIFIED:
        directions = " and ".join(verdict.unverified_directions)
        sentences.append(f"The system could not verify the {directions} "
                         f"implication within the proof budget; this is a failure "
                         f"to verify, and a simpler rephrasing may help.")
    return " ".join(sentences)


def feedback_text(report: DeformalizationReport | FormalizationReport) -> str:
    """Recompute the feedback message for a report."""
    if report.verdict is None:
        return report.message
    simplicity = getattr(report, "simplicity", None)
    return compose_feedback(report.verdict, simplicity, report.countermodels)


def check_deformalization(ex: Exercise, user_text: str, backend: BackendConfig,
                          budget: ProofBudget | None = None,
                          template: PromptTemplate | None = None) -> DeformalizationReport:
    """Run the full correction pipeline on a natural-language answer."""
    budget = budget or ProofBudget()
    if not user_text.strip():
        echo: FormalizationOutput = BackendError("malformed-output", "empty answer")
        return DeformalizationReport(echo, None, None, None, {},
                                     "The answer is empty; nothing to check.")
    echo = formalize(backend, ex.signature, user_text, template)

    if isinstance(echo, BackendError):
        if echo.kind == REFUSED:
            message = ("The formalization backend reported an error for this input; "
                       "no further checking was done.")
        else:
            message = (f"The answer could not be formalized ({echo.kind}: "
                       f"{echo.detail}); no further checking was done.")
        return DeformalizationReport(echo, None, None, None, {}, message)
    if isinstance(echo, NotExpressible):
        message = ("The answer could not be expressed in the exercise notation; "
                   "no further checking was done.")
        return DeformalizationReport(echo, None, None, None, {}, message)

    directional = check_equivalence(echo.formula, ex.gold, budget)
    verdict = classify_verdict(directional)
    countermodels = _collect_countermodels(directional)
    simplicity = None
    if verdict.kind == EQUIVALENT:
        simplicity = simplicity_score(ex.sentence, user_text)
    message = compose_feedback(verdict, simplicity, countermodels)
    return DeformalizationReport(echo, directional, verdict, simplicity,
                                 countermodels, message)


def check_formalization(ex: Exercise, user_formula_text: str,
                        budget: ProofBudget | None = None) -> FormalizationReport:
    """Check a formula submitted for a formalization exercise."""
    budget = budget or ProofBudget()
    try:
        user_formula = parse_formula(user_formula_text)
    except ParseError as error:
        return FormalizationReport(
            parse_ok=False, errors=(error,), directional=None, verdict=None,
            countermodels={},
            message=f"The input is not a well-formed formula: {error.message}.")

    problems = check_well_formed(user_formula, ex.signature)
    if problems:
        listing = "; ".join(p.message for p in problems)
        return FormalizationReport(
            parse_ok=True, errors=tuple(problems), directional=None, verdict=None,
            countermodels={},
            message=f"The formula is not well-formed for this exercise: {listing}.")

    directional = check_equivalence(user_formula, ex.gold, budget)
    verdict = classify_verdict(directional)
    countermodels = _collect_countermodels(directional)
    message = compose_feedback(verdict, None, countermodels)
    return FormalizationReport(
        parse_ok=True, errors=(), directional=directional, verdict=verdict,
        countermodels=countermodels, message=message)
