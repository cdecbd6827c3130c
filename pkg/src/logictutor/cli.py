"""Command-line interface.

Subcommands: ``bench`` (replay a recorded benchmark and compare verdicts),
``prove`` / ``equiv`` (one-off proof queries), ``check-deformalization`` /
``check-formalization`` / ``check-argument`` (run the tutor pipelines), and
``serve`` (start the HTTP gateway).  Usage errors exit 2, data errors 1;
``bench`` exits 0 only when every derived verdict matches the recorded one.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .argue import check_argument
from .autoform import BackendConfig, RemoteBackend, ScriptedBackend
from .corpus import (
    CorpusError, load_argument_file, load_benchmark_file, load_exercise_file,
    score_benchmark,
)
from .formula import ParseError, free_variables, is_propositional, parse_formula
from .prover import (
    Countermodel, ProofBudget, Proved, RefutedBySmallModel, Unknown, Valid,
    check_equivalence, classify_verdict, fol_validity, prop_validity,
)
from .serialize import (
    argument_report_to_dict, deformalization_report_to_dict,
    formalization_report_to_dict,
)
from .signature import Signature
from .tutor import check_deformalization, check_formalization

VERDICT_TITLES = {
    "equivalent": "Equivalent",
    "sufficient-not-necessary": "Sufficient, but not necessary",
    "necessary-not-sufficient": "Necessary, but not sufficient",
    "neither": "Neither",
    "partially-unverified": "Partially unverified",
}


def _budget(args: argparse.Namespace) -> ProofBudget:
    return ProofBudget(wall_ms=args.budget_ms)


def _render_assignment(assignment: dict[str, bool]) -> str:
    return ", ".join(f"{name}={'true' if value else 'false'}"
                     for name, value in sorted(assignment.items()))


def _print_prop_result(result) -> None:
    if isinstance(result, Valid):
        print("Valid")
    else:
        print(f"Countermodel: {_render_assignment(result.as_dict())}")


def _print_fol_result(result) -> None:
    if isinstance(result, Proved):
        print("Proved")
    elif isinstance(result, Unknown):
        print(f"Unknown ({result.reason})")
    elif isinstance(result, RefutedBySmallModel):
        print(f"Refuted by small model: {result.model.describe()}")


def _load_backend(path: str | None, sig: Signature,
                  fallback: dict[str, str] | None = None) -> BackendConfig:
    if path is None:
        return ScriptedBackend.for_signature(sig, fallback or {})
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    if data.get("type") == "remote":
        return RemoteBackend(
            endpoint=data["endpoint"], model=data["model"],
            temperature=float(data.get("temperature", 0.0)),
            api_key_env=data.get("api_key_env"),
            timeout_ms=int(data.get("timeout_ms", 30000)))
    return ScriptedBackend.for_signature(sig, data.get("replies", {}))


def _find_exercise(path: str | None, exercise_id: str):
    from .corpus import data_path
    file = Path(path) if path else data_path("exercises.json")
    for ex in load_exercise_file(file):
        if ex.id == exercise_id:
            return ex
    raise CorpusError(f"{file}: no exercise with id {exercise_id!r}")


def _find_argument(path: str | None, exercise_id: str):
    from .corpus import data_path
    file = Path(path) if path else data_path("arguments.json")
    for ex, scripted in load_argument_file(file):
        if ex.id == exercise_id:
            return ex, scripted
    raise CorpusError(f"{file}: no argument exercise with id {exercise_id!r}")


def cmd_bench(args: argparse.Namespace) -> int:
    bench = load_benchmark_file(args.dataset)
    summary = score_benchmark(bench, args.model, _budget(args))
    print(f"{'row':>4}  {'derived':<10}{'expected':<10}{'match':<7}detail")
    for r in summary.row_results:
        expected = r.expected or ("example" if not r.scored else "?")
        match = "ok" if r.matched else "MISMATCH"
        print(f"{r.row_id:>4}  {r.derived:<10}{expected:<10}{match:<7}{r.detail}")
    print(f"model {summary.model}: correct {summary.correct}/{summary.total} "
          f"(incorrect {summary.incorrect}); "
          f"mismatches vs expected: {len(summary.mismatches)}")
    if args.report_dir:
        from .report import write_benchmark_report
        for written in write_benchmark_report(bench, summary, args.report_dir):
            print(f"wrote {written}")
    return 0 if not summary.mismatches else 1


def cmd_prove(args: argparse.Namespace) -> int:
    formula = parse_formula(args.formula)
    if is_propositional(formula):
        _print_prop_result(prop_validity(formula))
        return 0
    if free_variables(formula):
        print("error: the formula must be closed", file=sys.stderr)
        return 1
    _print_fol_result(fol_validity(formula, _budget(args)))
    return 0


def cmd_equiv(args: argparse.Namespace) -> int:
    left = parse_formula(args.first)
    right = parse_formula(args.second)
    directional = check_equivalence(left, right, _budget(args))
    verdict = classify_verdict(directional)
    title = VERDICT_TITLES[verdict.kind]
    if verdict.unverified_directions:
        title += f" ({', '.join(verdict.unverified_directions)})"
    print(title)
    for name, result in (("forward", directional.forward),
                         ("backward", directional.backward)):
        if isinstance(result, Countermodel):
            print(f"{name} countermodel: {_render_assignment(result.as_dict())}")
    return 0


def cmd_check_deformalization(args: argparse.Namespace) -> int:
    ex = _find_exercise(args.exercises, args.exercise)
    backend = _load_backend(args.backend, ex.signature)
    report = check_deformalization(ex, args.text, backend, _budget(args))
    print(json.dumps(deformalization_report_to_dict(report),
                     indent=2, ensure_ascii=False))
    return 0


def cmd_check_formalization(args: argparse.Namespace) -> int:
    ex = _find_exercise(args.exercises, args.exercise)
    report = check_formalization(ex, args.formula, _budget(args))
    print(json.dumps(formalization_report_to_dict(report),
                     indent=2, ensure_ascii=False))
    return 0


def cmd_check_argument(args: argparse.Namespace) -> int:
    ex, scripted = _find_argument(args.arguments, args.exercise)
    backend = _load_backend(args.backend, ex.signature, fallback=scripted)
    steps = [line for line in
             Path(args.steps).read_text(encoding="utf-8").splitlines()
             if line.strip()]
    report = check_argument(ex, steps, backend, _budget(args))
    print(json.dumps(argument_report_to_dict(report), indent=2, ensure_ascii=False))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import load_service_config, serve_http
    try:
        config = load_service_config(args.config)
        serve_http(config)
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logictutor",
        description="Logic exercise tutor: provers, grading, benchmark replay.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budget(p: argparse.ArgumentParser) -> None:
        p.add_argument("--budget-ms", type=int, default=2000,
                       help="wall-clock proof budget in milliseconds")

    p = sub.add_parser("bench", help="replay a recorded benchmark")
    p.add_argument("dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--report-dir", default=None,
                   help="write rows.csv and accuracy.png here")
    add_budget(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("prove", help="decide validity of one formula")
    p.add_argument("formula")
    add_budget(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("equiv", help="check logical equivalence of two formulas")
    p.add_argument("first")
    p.add_argument("second")
    add_budget(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("check-deformalization",
                       help="grade a natural-language answer for an exercise")
    p.add_argument("--exercise", required=True)
    p.add_argument("--text", required=True)
    p.add_argument("--backend", default=None, help="backend config JSON file")
    p.add_argument("--exercises", default=None, help="exercise corpus file")
    add_budget(p)
    p.set_defaults(func=cmd_check_deformalization)

    p = sub.add_parser("check-formalization",
                       help="grade a formula answer for an exercise")
    p.add_argument("--exercise", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--exercises", default=None)
    add_budget(p)
    p.set_defaults(func=cmd_check_formalization)

    p = sub.add_parser("check-argument", help="check an argument step file")
    p.add_argument("--exercise", required=True)
    p.add_argument("--steps", required=True, help="file with one step per line")
    p.add_argument("--backend", default=None)
    p.add_argument("--arguments", default=None)
    add_budget(p)
    p.set_defaults(func=cmd_check_argument)

    p = sub.add_parser("serve", help="run the HTTP gateway")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_serve)

    return parser


def run_cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    try:
        return args.func(args)
    except (CorpusError, ParseError, OSError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))
