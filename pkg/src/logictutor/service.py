"""HTTP JSON gateway for exercises, argument checking, and health.

Stateless: the corpus and backend are shared read-only, each request gets
its own proof budget, and no session data is kept server-side.  In
deformalization mode the template sentence is never exposed to the client;
in formalization mode the expected formula is hidden instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .argue import ArgumentExercise, check_argument
from .autoform import BackendConfig, RemoteBackend, ScriptedBackend
from .corpus import (
    CorpusError, load_argument_file, load_exercise_file, signature_to_dict,
)
from .formula import render_formula
from .serialize import (
    argument_report_to_dict, deformalization_report_to_dict,
    formalization_report_to_dict,
)
from .signature import Signature
from .prover import ProofBudget
from .tutor import check_deformalization, check_formalization


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    corpus_dir: str = "."
    backend: dict[str, Any] = field(default_factory=lambda: {"type": "scripted", "replies": {}})
    budget: ProofBudget = ProofBudget()
    static_dir: str | None = None


def load_service_config(path: str | Path) -> ServiceConfig:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    listen = data.get("listen", "127.0.0.1:8000")
    host, _, port = listen.rpartition(":")
    budget_data = data.get("budget", {})
    budget = ProofBudget(
        wall_ms=budget_data.get("wall_ms", 2000),
        max_instantiations=budget_data.get("instantiations", 64),
        max_depth=budget_data.get("depth", 40),
    )
    return ServiceConfig(
        host=host or "127.0.0.1",
        port=int(port),
        corpus_dir=data["corpus_dir"],
        backend=data.get("backend", {"type": "scripted", "replies": {}}),
        budget=budget,
        static_dir=data.get("static_dir"),
    )


def resolve_backend(config: dict[str, Any],
                    signatures: list[Signature]) -> BackendConfig:
    """Build the runtime backend from its JSON description.

    A scripted description carries plain sentence→reply entries; they are
    bound to every corpus signature so lookups work for whichever exercise
    the sentence belongs to.
    """
    kind = config.get("type", "scripted")
    if kind == "remote":
        return RemoteBackend(
            endpoint=config["endpoint"],
            model=config["model"],
            temperature=float(config.get("temperature", 0.0)),
            api_key_env=config.get("api_key_env"),
            timeout_ms=int(config.get("timeout_ms", 30000)),
        )
    if kind == "scripted":
        merged = ScriptedBackend({})
        replies = config.get("replies", {})
        for sig in signatures:
            merged = merged.merged_with(ScriptedBackend.for_signature(sig, replies))
        return merged
    raise ValueError(f"unknown backend type {kind!r}")


def _error(status: int, kind: str, detail: str, extra: dict[str, Any] | None = None):
    body: dict[str, Any] = {"error": {"kind": kind, "detail": detail}}
    if extra:
        body.update(extra)
    return JSONResponse(status_code=status, content=body)


class DeformalizationRequest(BaseModel):
    text: str


class FormalizationRequest(BaseModel):
    formula: str


class ArgumentRequest(BaseModel):
    steps: list[str]


def create_app(config: ServiceConfig) -> FastAPI:
    corpus_dir = Path(config.corpus_dir)
    if not corpus_dir.is_dir():
        raise CorpusError(f"{corpus_dir}: corpus directory is not readable")
    exercises = {ex.id: ex for ex in load_exercise_file(corpus_dir / "exercises.json")}
    arguments: dict[str, ArgumentExercise] = {}
    argument_scripts: dict[str, dict[str, str]] = {}
    arguments_path = corpus_dir / "arguments.json"
    if arguments_path.exists():
        for exercise, scripted in load_argument_file(arguments_path):
            arguments[exercise.id] = exercise
            argument_scripts[exercise.id] = scripted

    signatures = [ex.signature for ex in exercises.values()]
    signatures += [ex.signature for ex in arguments.values()]
    backend = resolve_backend(config.backend, signatures)
    if isinstance(backend, ScriptedBackend):
        for exercise_id, scripted in argument_scripts.items():
            bound = ScriptedBackend.for_signature(
                arguments[exercise_id].signature, scripted)
            backend = backend.merged_with(bound)
    budget = config.budget

    app = FastAPI(title="logictutor", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def handle_validation(request: Request, exc: RequestValidationError):
        return _error(400, "schema-violation", str(exc.errors()))

    @app.get("/api/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.get("/api/exercises")
    def list_exercises() -> list[dict[str, Any]]:
        return [{"id": ex.id, "kind": ex.signature.kind, "modes": list(ex.modes)}
                for ex in exercises.values()]

    @app.get("/api/exercises/{exercise_id}")
    def get_exercise(exercise_id: str, mode: str = Query("deformalize")):
        ex = exercises.get(exercise_id)
        if ex is None:
            return _error(404, "unknown-exercise", f"no exercise {exercise_id!r}")
        if mode not in ex.modes:
            return _error(400, "schema-violation", f"unknown mode {mode!r}")
        body: dict[str, Any] = {
            "id": ex.id,
            "kind": ex.signature.kind,
            "mode": mode,
            "notation": signature_to_dict(ex.signature),
        }
        if mode == "formalize":
            body["sentence"] = ex.sentence  # the formula stays hidden
        else:
            body["formula"] = render_formula(ex.gold)  # the sentence stays hidden
        return body

    @app.post("/api/exercises/{exercise_id}/deformalization")
    def post_deformalization(exercise_id: str, request: DeformalizationRequest):
        ex = exercises.get(exercise_id)
        if ex is None:
            return _error(404, "unknown-exercise", f"no exercise {exercise_id!r}")
        report = check_deformalization(ex, request.text, backend, budget)
        return deformalization_report_to_dict(report)

    @app.post("/api/exercises/{exercise_id}/formalization")
    def post_formalization(exercise_id: str, request: FormalizationRequest):
        ex = exercises.get(exercise_id)
        if ex is None:
            return _error(404, "unknown-exercise", f"no exercise {exercise_id!r}")
        report = check_formalization(ex, request.formula, budget)
        body = formalization_report_to_dict(report)
        if not report.parse_ok or report.errors:
            kind = "parse-error" if not report.parse_ok else "well-formedness"
            return _error(422, kind, report.message, {"report": body})
        return body

    @app.get("/api/arguments")
    def list_arguments() -> list[dict[str, Any]]:
        return [{"id": ex.id,
                 "premises": list(ex.premise_sentences),
                 "goal_sentence": ex.goal_sentence,
                 "notation": signature_to_dict(ex.signature)}
                for ex in arguments.values()]

    @app.post("/api/arguments/{exercise_id}")
    def post_argument(exercise_id: str, request: ArgumentRequest):
        ex = arguments.get(exercise_id)
        if ex is None:
            return _error(404, "unknown-exercise", f"no argument exercise {exercise_id!r}")
        if not request.steps:
            return _error(400, "schema-violation", "steps must be non-empty")
        report = check_argument(ex, request.steps, backend, budget)
        return argument_report_to_dict(report)

    if config.static_dir:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True),
                  name="ui")

    return app


def serve_http(config: ServiceConfig) -> None:
    """Run until interrupted; uvicorn handles graceful shutdown, and each
    in-flight proof finishes within its request's budget."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
