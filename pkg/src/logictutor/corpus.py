"""Datasets: exercise files, benchmark tables, and the replay scorer.

Benchmark files record, for each input sentence, the raw reply of one or
more models together with the source correct/incorrect verdict.  The
scorer re-derives each verdict by parsing the recorded reply and proving
logical equivalence against the row's acceptable answers, so a semantically
equivalent reply in different notation still counts as correct.  Rows can
be flagged as the in-prompt worked example for a model; such rows count as
correct for that model without scoring (the reply is part of the prompt)
and are excluded from scripted replay backends.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from importlib import resources

from .argue import ArgumentExercise
from .autoform import Formalized, NotExpressible, ScriptedBackend, parse_model_output
from .formula import Formula, ParseError, check_well_formed, parse_formula, render_formula
from .grader import normalize_text
from .prover import ProofBudget, check_equivalence, classify_verdict, EQUIVALENT
from .signature import (
    ConstDecl, PredDecl, PropDecl, Signature, signature_fingerprint,
    validate_signature,
)
from .tutor import Exercise

NOT_EXPRESSIBLE = "NOT_EXPRESSIBLE"

CORRECT = "correct"
INCORRECT = "incorrect"

_EXPECTED_MARKS = {"+": CORRECT, "-": INCORRECT}


class CorpusError(ValueError):
    """A dataset file violates its schema; the message names the field."""


def _require(condition: bool, path: str, message: str) -> None:
    if not condition:
        raise CorpusError(f"{path}: {message}")


@dataclass(frozen=True)
class BenchRow:
    id: int
    sentence: str
    gold: tuple[Formula | str, ...]  # formulas plus the NOT_EXPRESSIBLE sentinel
    outputs: dict[str, str]
    expected: dict[str, str]  # model -> "correct" | "incorrect"
    example_for: frozenset[str] = frozenset()
    note: str = ""


@dataclass(frozen=True)
class Benchmark:
    kind: str
    signature: Signature
    rows: tuple[BenchRow, ...]
    comment: str = ""

    def models(self) -> list[str]:
        names: list[str] = []
        for row in self.rows:
            for model in list(row.outputs) + list(row.example_for):
                if model not in names:
                    names.append(model)
        return names


@dataclass(frozen=True)
class RowResult:
    row_id: int
    derived: str  # "correct" | "incorrect"
    expected: str | None
    matched: bool
    scored: bool
    detail: str = ""


@dataclass(frozen=True)
class BenchSummary:
    model: str
    total: int
    correct: int
    incorrect: int
    row_results: tuple[RowResult, ...]
    mismatches: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.correct + self.incorrect != self.total:
            raise CorpusError("summary totals are inconsistent")


# --- Signature (de)serialization ---

def signature_from_dict(obj: Any, path: str) -> Signature:
    _require(isinstance(obj, dict), path, "notation must be an object")
    props = obj.get("props", [])
    preds = obj.get("preds", [])
    consts = obj.get("consts", [])
    for name, entries in (("props", props), ("preds", preds), ("consts", consts)):
        _require(isinstance(entries, list), f"{path}.{name}", "must be a list")
    kind = "fol" if preds or consts else "prop"
    if "kind" in obj:
        kind = obj["kind"]
    sig = Signature(
        kind,
        props=tuple(PropDecl(e["symbol"], e["gloss"]) for e in props),
        preds=tuple(PredDecl(e["symbol"], int(e["arity"]), e["gloss"]) for e in preds),
        consts=tuple(ConstDecl(e["symbol"], e["gloss"]) for e in consts),
    )
    errors = validate_signature(sig)
    _require(not errors, path, "; ".join(str(e) for e in errors) or "invalid notation")
    return sig


def signature_to_dict(sig: Signature) -> dict[str, Any]:
    out: dict[str, Any] = {"kind": sig.kind}
    if sig.props:
        out["props"] = [{"symbol": p.symbol, "gloss": p.gloss} for p in sig.props]
    if sig.preds:
        out["preds"] = [{"symbol": p.symbol, "arity": p.arity, "gloss": p.gloss}
                        for p in sig.preds]
    if sig.consts:
        out["consts"] = [{"symbol": c.symbol, "gloss": c.gloss} for c in sig.consts]
    return out


def _parse_gold_formula(text: str, sig: Signature, path: str) -> Formula:
    try:
        formula = parse_formula(text)
    except ParseError as error:
        raise CorpusError(f"{path}: {error}") from error
    problems = check_well_formed(formula, sig)
    _require(not problems, path, "; ".join(p.message for p in problems))
    return formula


# --- Exercise files ---

def load_exercise_file(path: str | Path) -> list[Exercise]:
    data = _read_json(path)
    _require(data.get("version") == 1, "version", "expected version 1")
    entries = data.get("exercises")
    _require(isinstance(entries, list), "exercises", "must be a list")
    exercises: list[Exercise] = []
    seen_ids: set[str] = set()
    for i, entry in enumerate(entries):
        where = f"exercises[{i}]"
        for key in ("id", "kind", "notation", "sentence", "formula"):
            _require(key in entry, where, f"missing field {key!r}")
        _require(entry["id"] not in seen_ids, f"{where}.id",
                 f"duplicate exercise id {entry['id']!r}")
        seen_ids.add(entry["id"])
        sig = signature_from_dict(entry["notation"], f"{where}.notation")
        _require(sig.kind == entry["kind"], f"{where}.kind",
                 f"notation is {sig.kind!r} but kind says {entry['kind']!r}")
        _require(bool(normalize_text(entry["sentence"])), f"{where}.sentence",
                 "sentence must be non-empty")
        gold = _parse_gold_formula(entry["formula"], sig, f"{where}.formula")
        exercises.append(Exercise(entry["id"], sig, entry["sentence"], gold))
    return exercises


def exercises_to_dict(exercises: list[Exercise]) -> dict[str, Any]:
    return {"version": 1, "exercises": [
        {"id": ex.id, "kind": ex.signature.kind,
         "notation": signature_to_dict(ex.signature),
         "sentence": ex.sentence,
         "formula": render_formula(ex.gold)}
        for ex in exercises]}


# --- Benchmark files ---

def load_benchmark_file(path: str | Path) -> Benchmark:
    data = _read_json(path)
    _require(data.get("version") == 1, "version", "expected version 1")
    _require(data.get("kind") in ("prop", "fol"), "kind", "must be 'prop' or 'fol'")
    sig = signature_from_dict(data.get("notation"), "notation")
    _require(sig.kind == data["kind"], "kind", "does not match the notation block")
    raw_rows = data.get("rows")
    _require(isinstance(raw_rows, list), "rows", "must be a list")

    rows: list[BenchRow] = []
    seen_ids: set[int] = set()
    for i, entry in enumerate(raw_rows):
        where = f"rows[{i}]"
        for key in ("id", "sentence", "gold", "outputs", "expected"):
            _require(key in entry, where, f"missing field {key!r}")
        _require(entry["id"] not in seen_ids, f"{where}.id", "duplicate row id")
        seen_ids.add(entry["id"])
        _require(isinstance(entry["gold"], list) and entry["gold"],
                 f"{where}.gold", "must be a non-empty list")
        gold: list[Formula | str] = []
        for j, answer in enumerate(entry["gold"]):
            if answer == NOT_EXPRESSIBLE:
                gold.append(NOT_EXPRESSIBLE)
            else:
                gold.append(_parse_gold_formula(answer, sig, f"{where}.gold[{j}]"))
        outputs = entry["outputs"]
        expected_raw = entry["expected"]
        _require(isinstance(outputs, dict), f"{where}.outputs", "must be an object")
        _require(isinstance(expected_raw, dict), f"{where}.expected", "must be an object")
        expected: dict[str, str] = {}
        for model, mark in expected_raw.items():
            _require(mark in _EXPECTED_MARKS, f"{where}.expected.{model}",
                     "must be '+' or '-'")
            _require(model in outputs, f"{where}.outputs",
                     f"model {model!r} has a verdict but no recorded output")
            expected[model] = _EXPECTED_MARKS[mark]
        rows.append(BenchRow(
            id=int(entry["id"]),
            sentence=entry["sentence"],
            gold=tuple(gold),
            outputs=dict(outputs),
            expected=expected,
            example_for=frozenset(entry.get("example_for", [])),
            note=entry.get("note", ""),
        ))
    return Benchmark(data["kind"], sig, tuple(rows), data.get("comment", ""))


def benchmark_to_dict(bench: Benchmark) -> dict[str, Any]:
    marks = {CORRECT: "+", INCORRECT: "-"}
    rows = []
    for row in bench.rows:
        entry: dict[str, Any] = {
            "id": row.id,
            "sentence": row.sentence,
            "gold": [g if g == NOT_EXPRESSIBLE else render_formula(g) for g in row.gold],
            "outputs": dict(row.outputs),
            "expected": {m: marks[v] for m, v in row.expected.items()},
        }
        if row.example_for:
            entry["example_for"] = sorted(row.example_for)
        if row.note:
            entry["note"] = row.note
        rows.append(entry)
    out: dict[str, Any] = {"version": 1, "kind": bench.kind,
                           "notation": signature_to_dict(bench.signature),
                           "rows": rows}
    if bench.comment:
        out["comment"] = bench.comment
    return out


# --- Argument exercise files ---

def load_argument_file(path: str | Path) -> list[tuple[ArgumentExercise, dict[str, str]]]:
    """Argument exercises, each with its scripted step-formalization replies."""
    data = _read_json(path)
    _require(data.get("version") == 1, "version", "expected version 1")
    entries = data.get("arguments")
    _require(isinstance(entries, list), "arguments", "must be a list")
    out: list[tuple[ArgumentExercise, dict[str, str]]] = []
    seen_ids: set[str] = set()
    for i, entry in enumerate(entries):
        where = f"arguments[{i}]"
        for key in ("id", "notation", "premises", "goal"):
            _require(key in entry, where, f"missing field {key!r}")
        _require(entry["id"] not in seen_ids, f"{where}.id", "duplicate id")
        seen_ids.add(entry["id"])
        sig = signature_from_dict(entry["notation"], f"{where}.notation")
        _require(sig.kind == "prop", f"{where}.notation",
                 "argument exercises are propositional")
        premises: list[Formula] = []
        sentences: list[str] = []
        for j, premise in enumerate(entry["premises"]):
            pw = f"{where}.premises[{j}]"
            _require("formula" in premise and "sentence" in premise, pw,
                     "premises need sentence and formula")
            premises.append(_parse_gold_formula(premise["formula"], sig, pw))
            sentences.append(premise["sentence"])
        goal = _parse_gold_formula(entry["goal"], sig, f"{where}.goal")
        exercise = ArgumentExercise(
            id=entry["id"], signature=sig, premises=tuple(premises),
            premise_sentences=tuple(sentences), goal=goal,
            goal_sentence=entry.get("goal_sentence", ""))
        out.append((exercise, dict(entry.get("scripted", {}))))
    return out


# --- Scripted replay backends ---

def scripted_backend_from_benchmark(bench: Benchmark, model: str) -> ScriptedBackend:
    """Replay backend for one model column, keyed by the benchmark notation.

    Rows flagged as in-prompt examples are left out: their replies belong
    to the prompt, not to the model's recorded behavior.
    """
    fingerprint = signature_fingerprint(bench.signature)
    table: dict[tuple[str, str], str] = {}
    for row in bench.rows:
        if row.example_for:
            continue
        if model not in row.outputs:
            raise CorpusError(f"rows[{row.id}]: no output recorded for model {model!r}")
        table[(fingerprint, normalize_text(row.sentence))] = row.outputs[model]
    return ScriptedBackend(table)


# --- Scoring ---

def _row_is_correct(row: BenchRow, raw_output: str, sig: Signature,
                    budget: ProofBudget) -> tuple[bool, str]:
    parsed = parse_model_output(raw_output, sig)
    if isinstance(parsed, NotExpressible):
        if any(g == NOT_EXPRESSIBLE for g in row.gold):
            return True, "not-expressible, as expected"
        return False, "replied not-expressible, but the sentence is expressible"
    if isinstance(parsed, Formalized):
        for gold in row.gold:
            if gold == NOT_EXPRESSIBLE:
                continue
            directional = check_equivalence(parsed.formula, gold, budget)
            if classify_verdict(directional).kind == EQUIVALENT:
                return True, f"equivalent to {render_formula(gold)}"
        return False, "not equivalent to any acceptable answer"
    return False, f"unscorable reply ({parsed.kind}: {parsed.detail})"


def score_benchmark(bench: Benchmark, model: str,
                    budget: ProofBudget | None = None) -> BenchSummary:
    """Re-derive every verdict for one model and compare with the recorded ones."""
    budget = budget or ProofBudget()
    results: list[RowResult] = []
    correct = incorrect = 0
    mismatches: list[int] = []
    for row in bench.rows:
        if model in row.example_for:
            correct += 1
            results.append(RowResult(row.id, CORRECT, None, True, False,
                                     "in-prompt example; counted correct unscored"))
            continue
        if model not in row.outputs:
            raise CorpusError(f"rows[{row.id}]: no output recorded for model {model!r}")
        ok, detail = _row_is_correct(row, row.outputs[model], bench.signature, budget)
        derived = CORRECT if ok else INCORRECT
        if ok:
            correct += 1
        else:
            incorrect += 1
        expected = row.expected.get(model)
        matched = expected is None or derived == expected
        if not matched:
            mismatches.append(row.id)
        results.append(RowResult(row.id, derived, expected, matched, True, detail))
    return BenchSummary(model, len(results), correct, incorrect,
                        tuple(results), tuple(mismatches))


# --- Bundled data ---

def data_path(name: str) -> Path:
    return Path(str(resources.files("logictutor").joinpath("data").joinpath(name)))


def load_bundled_benchmark(name: str) -> Benchmark:
    return load_benchmark_file(data_path(name))


def load_bundled_exercises() -> list[Exercise]:
    return load_exercise_file(data_path("exercises.json"))


def load_bundled_arguments() -> list[tuple[ArgumentExercise, dict[str, str]]]:
    return load_argument_file(data_path("arguments.json"))


def _read_json(path: str | Path) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except FileNotFoundError:
        raise CorpusError(f"{path}: file not found") from None
    except json.JSONDecodeError as error:
        raise CorpusError(f"{path}: invalid JSON ({error})") from error
    _require(isinstance(data, dict), str(path), "top level must be an object")
    return data
