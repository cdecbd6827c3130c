"""JSON-ready dict views of report and result types, shared by CLI and service."""

from __future__ import annotations

from typing import Any

from .argue import ArgumentReport
from .autoform import BackendError, Formalized, FormalizationOutput, NotExpressible
from .formula import ParseError, render_formula
from .grader import SimplicityScore
from .prover import (
    Countermodel, DirectionalEquivalence, Proved, PropResult, FolResult,
    RefutedBySmallModel, Unknown, Valid, Verdict,
)
from .tutor import DeformalizationReport, FormalizationReport


def result_to_dict(result: PropResult | FolResult) -> dict[str, Any]:
    if isinstance(result, Valid):
        return {"result": "valid"}
    if isinstance(result, Proved):
        return {"result": "proved"}
    if isinstance(result, Countermodel):
        return {"result": "countermodel", "assignment": result.as_dict()}
    if isinstance(result, Unknown):
        return {"result": "unknown", "reason": result.reason}
    if isinstance(result, RefutedBySmallModel):
        return {"result": "refuted-by-small-model",
                "model": result.model.describe()}
    raise TypeError(f"not a proof result: {result!r}")


def directional_to_dict(d: DirectionalEquivalence | None) -> dict[str, Any] | None:
    if d is None:
        return None
    return {"forward": result_to_dict(d.forward),
            "backward": result_to_dict(d.backward)}


def verdict_to_dict(v: Verdict | None) -> dict[str, Any] | None:
    if v is None:
        return None
    out: dict[str, Any] = {"kind": v.kind}
    if v.unverified_directions:
        out["unverified_directions"] = list(v.unverified_directions)
    return out


def simplicity_to_dict(s: SimplicityScore | None) -> dict[str, Any] | None:
    if s is None:
        return None
    return {"value": s.value, "display_value": s.display_value, "band": s.band,
            "template_length": s.template_length, "input_length": s.input_length}


def echo_to_dict(echo: FormalizationOutput) -> dict[str, Any]:
    if isinstance(echo, Formalized):
        return {"status": "formalized",
                "formula": render_formula(echo.formula),
                "raw": echo.raw}
    if isinstance(echo, NotExpressible):
        return {"status": "not-expressible", "raw": echo.raw}
    if isinstance(echo, BackendError):
        return {"status": "backend-error", "kind": echo.kind, "detail": echo.detail}
    raise TypeError(f"not a formalization output: {echo!r}")


def parse_error_to_dict(error: ParseError) -> dict[str, Any]:
    return {"kind": error.kind, "position": error.position, "message": error.message}


def deformalization_report_to_dict(report: DeformalizationReport) -> dict[str, Any]:
    return {
        "echo": echo_to_dict(report.echo),
        "directional": directional_to_dict(report.directional),
        "verdict": verdict_to_dict(report.verdict),
        "simplicity": simplicity_to_dict(report.simplicity),
        "countermodels": report.countermodels,
        "message": report.message,
    }


def formalization_report_to_dict(report: FormalizationReport) -> dict[str, Any]:
    return {
        "parse_ok": report.parse_ok,
        "errors": [parse_error_to_dict(e) for e in report.errors],
        "directional": directional_to_dict(report.directional),
        "verdict": verdict_to_dict(report.verdict),
        "countermodels": report.countermodels,
        "message": report.message,
    }


def argument_report_to_dict(report: ArgumentReport) -> dict[str, Any]:
    return {
        "steps": [
            {"text": step.text,
             "kind": step.kind,
             "formula": render_formula(step.formula) if step.formula else None,
             "status": step.status,
             "fallacy_hint": step.fallacy_hint,
             "detail": step.detail}
            for step in report.steps],
        "goal_achieved": report.goal_achieved,
        "open_assumptions": report.open_assumptions,
        "message": report.message,
    }
