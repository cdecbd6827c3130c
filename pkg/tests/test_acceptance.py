"""Acceptance suite: one test per release criterion, at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.
"""

from __future__ import annotations

import math
import random
import time

from logictutor.argue import NOT_ENTAILED, VERIFIED, check_argument
from logictutor.autoform import BackendError, ScriptedBackend
from logictutor.corpus import (
    INCORRECT, NOT_EXPRESSIBLE, load_bundled_arguments, load_bundled_benchmark,
    load_bundled_exercises, score_benchmark,
)
from logictutor.grader import HIGH, LOW, score_band, simplicity_score
from logictutor.prover import (
    Countermodel, ProofBudget, Proved, RefutedBySmallModel, Valid,
    check_equivalence, classify_verdict, decide_monadic, prop_validity,
    tableau_validity,
)
from logictutor.prover.monadic import is_monadic
from logictutor.tutor import check_deformalization

from .oracles import brute_force_entails, eval_formula, random_prop_formula


def _ok(name: str) -> None:
    print(f"[acceptance] {name}: PASS")


def test_benchmark_prop_gpt4():
    """Propositional replay, gpt4: 55/57, incorrect {38, 44}, zero mismatches, < 10 s."""
    started = time.monotonic()
    bench = load_bundled_benchmark("prop_bench.json")
    summary = score_benchmark(bench, "gpt4")
    elapsed = time.monotonic() - started
    assert summary.total == 57
    assert summary.correct == 55
    incorrect_rows = [r.row_id for r in summary.row_results if r.derived == INCORRECT]
    assert incorrect_rows == [38, 44]
    assert summary.mismatches == ()
    assert elapsed < 10.0
    _ok(f"benchmark prop/gpt4 55/57, rows {{38,44}} wrong, {elapsed:.2f}s")


def test_benchmark_prop_wizardcoder():
    """Propositional replay, wizardcoder: exactly 40 correct; repair rows 31/56 correct."""
    bench = load_bundled_benchmark("prop_bench.json")
    summary = score_benchmark(bench, "wizardcoder")
    assert summary.total == 57
    assert summary.correct == 40
    assert summary.mismatches == ()
    by_id = {r.row_id: r for r in summary.row_results}
    assert by_id[31].derived == "correct"
    assert by_id[56].derived == "correct"
    _ok("benchmark prop/wizardcoder 40 correct incl. bracket-repair rows 31, 56")


def test_benchmark_fol_gpt4():
    """First-order replay, gpt4: 46/50, incorrect {13, 34, 35, 46}, < 3 min total."""
    started = time.monotonic()
    bench = load_bundled_benchmark("fol_bench.json")
    summary = score_benchmark(bench, "gpt4", ProofBudget(wall_ms=2000))
    elapsed = time.monotonic() - started
    assert summary.total == 50
    assert summary.correct == 46
    incorrect_rows = [r.row_id for r in summary.row_results if r.derived == INCORRECT]
    assert incorrect_rows == [13, 34, 35, 46]
    assert summary.mismatches == ()
    assert elapsed < 180.0
    _ok(f"benchmark fol/gpt4 46/50, rows {{13,34,35,46}} wrong, {elapsed:.2f}s")


def test_grader_analytic_points():
    """Score 5.0 at ratio 0.7 (1e-12); 10/(1+e^-3) at ratio 1 (1e-9); band edges."""
    at_cutoff = simplicity_score("a" * 70, "b" * 100)
    assert abs(at_cutoff.value - 5.0) < 1e-12
    at_parity = simplicity_score("same", "same")
    assert abs(at_parity.value - 10.0 / (1.0 + math.exp(-3.0))) < 1e-9
    assert score_band(5.0) == LOW
    assert score_band(8.0) == HIGH
    _ok("grader analytic points and band boundaries")


def test_prover_oracle_suite():
    """1,000 random formulas (<= 8 letters, depth <= 6): table and DPLL agree;
    every countermodel falsifies its formula."""
    rng = random.Random(20240613)
    agreements = 0
    for _ in range(1000):
        f = random_prop_formula(rng, list("ABCDEFGH"), 6)
        by_table = prop_validity(f, method="table")
        by_dpll = prop_validity(f, method="dpll")
        assert isinstance(by_table, Valid) == isinstance(by_dpll, Valid)
        for result in (by_table, by_dpll):
            if isinstance(result, Countermodel):
                assert eval_formula(f, result.as_dict()) is False
        agreements += 1
    assert agreements == 1000
    _ok("prover oracle suite: 1000/1000 table-DPLL agreements")


def _corpus_gold_formulas():
    formulas = []
    for name in ("prop_bench.json", "fol_bench.json"):
        bench = load_bundled_benchmark(name)
        for row in bench.rows:
            for gold in row.gold:
                if gold != NOT_EXPRESSIBLE:
                    formulas.append((f"{name}#{row.id}", gold))
    for ex in load_bundled_exercises():
        formulas.append((ex.id, ex.gold))
    return formulas


def test_first_order_reflexivity_suite():
    """check_equivalence(f, f) is Equivalent for all corpus gold formulas;
    decide_monadic agrees with the tableau on the monadic subset."""
    formulas = _corpus_gold_formulas()
    assert len(formulas) >= 50
    budget = ProofBudget()
    for label, f in formulas:
        verdict = classify_verdict(check_equivalence(f, f, budget))
        assert verdict.kind == "equivalent", label

    checked = 0
    from logictutor.formula import Implies, free_variables, is_propositional
    for label, f in formulas:
        if is_propositional(f) or not is_monadic(f) or free_variables(f):
            continue
        reflexive = Implies(f, f)
        assert decide_monadic(reflexive) == Valid(), label
        assert tableau_validity(reflexive, budget) == Proved(), label
        exact = decide_monadic(f)
        by_tableau = tableau_validity(f, ProofBudget(wall_ms=300, max_instantiations=8))
        if isinstance(exact, RefutedBySmallModel):
            assert not isinstance(by_tableau, Proved), label
        else:
            assert by_tableau == Proved(), label
        checked += 1
    assert checked >= 10
    _ok(f"reflexivity on {len(formulas)} corpus formulas; "
        f"monadic-tableau agreement on {checked}")


def test_end_to_end_deformalization():
    """Dog exercise: word-for-word answer is Equivalent/LOW, template-identical
    answer Equivalent/HIGH, backend 'error' gives a report with no verdict."""
    exercises = {ex.id: ex for ex in load_bundled_exercises()}
    dog = exercises["barking-dogs"]
    word_for_word = "For all x, if x is a dog and x barks, then x does not bite."
    backend = ScriptedBackend.for_signature(dog.signature, {
        word_for_word: "∀x((D(x)∧B(x))→¬S(x))",
        dog.sentence: "∀x((D(x)∧B(x))→¬S(x))",
        "Gibberish.": "error",
    })

    verbose = check_deformalization(dog, word_for_word, backend)
    assert verbose.verdict.kind == "equivalent"
    assert verbose.simplicity.band == LOW

    identical = check_deformalization(dog, dog.sentence, backend)
    assert identical.verdict.kind == "equivalent"
    assert identical.simplicity.band == HIGH

    refused = check_deformalization(dog, "Gibberish.", backend)
    assert isinstance(refused.echo, BackendError)
    assert refused.verdict is None
    assert refused.simplicity is None
    _ok("end-to-end deformalization: LOW / HIGH / error path")


def test_argumentation():
    """Five-step solution fully verifies; deleting any middle step breaks the
    following one; a truth-table oracle confirms every verified claim."""
    arguments = {ex.id: (ex, scripted) for ex, scripted in load_bundled_arguments()}
    chain, script = arguments["sunshine-walk"]
    backend = ScriptedBackend.for_signature(chain.signature, script)
    steps = [
        "The cat still sits on the roof.",
        "Hence the dog did not bark.",
        "Consequently, Hans did not take his dog for a walk.",
        "So Hans did not go for a walk.",
        "Thus the sun does not shine.",
    ]
    report = check_argument(chain, steps, backend)
    assert [s.status for s in report.steps] == [VERIFIED] * 5
    assert report.goal_achieved

    for removed in (1, 2, 3):
        shortened = steps[:removed] + steps[removed + 1:]
        broken = check_argument(chain, shortened, backend)
        assert broken.steps[removed].status == NOT_ENTAILED

    # oracle pass over the whole shipped argument corpus: every verified
    # claim is a semantic consequence of premises plus open assumptions
    for ex, scripted in arguments.values():
        ex_backend = ScriptedBackend.for_signature(ex.signature, scripted)
        ex_report = check_argument(ex, list(scripted), ex_backend)
        scopes = [list(ex.premises)]
        for step in ex_report.steps:
            if step.status != VERIFIED:
                continue
            if step.kind == "assumption":
                scopes.append([step.formula])
                continue
            if step.kind == "discharge":
                scopes.pop()
            flat = [f for scope in scopes for f in scope]
            assert brute_force_entails(flat, step.formula), step.text
            scopes[-1].append(step.formula)
    _ok("argumentation: five-step solution, deletion breakage, oracle confirmation")
