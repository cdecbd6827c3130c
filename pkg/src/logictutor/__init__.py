"""Automated tutor engine for logic formalization and deformalization exercises.

Parse and print a shared propositional/first-order formula language, decide
propositional validity with countermodels, semi-decide first-order validity
by tableau (with an exact procedure for the monadic fragment), grade the
naturalness of natural-language answers, formalize student input through
pluggable backends, and replay recorded model benchmarks deterministically.
"""

from .formula import (
    And, Const, Equal, Exists, Forall, Formula, Iff, Implies, Not, Or,
    ParseError, Pred, PropAtom, Term, Var, Xor, check_well_formed, desugar,
    free_variables, is_propositional, parse_formula, render_formula,
)
from .grader import SimplicityScore, normalized_length, score_band, simplicity_score
from .prover import (
    Countermodel, DirectionalEquivalence, ProofBudget, Proved,
    RefutedBySmallModel, Unknown, Valid, Verdict, check_equivalence,
    classify_verdict, decide_monadic, fol_validity, prop_validity,
    tableau_validity,
)
from .signature import (
    Signature, parse_notation_block, render_notation_block,
    signature_fingerprint, validate_signature,
)
from .tutor import Exercise, check_deformalization, check_formalization

__version__ = "0.1.0"
