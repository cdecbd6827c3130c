"""Formalization backends: prompt construction and reply parsing.

A backend turns a natural-language sentence into a formula over a given
signature.  Two kinds are supported: a scripted backend replaying recorded
replies (deterministic, used for tests and benchmark replay) and a remote
chat-completion endpoint.  Raw replies are normalized before parsing:
code fences, quotes, and a single trailing period are stripped, the
sentinel replies ``error`` and ``not expressable``/``not expressible`` are
recognized case-insensitively, and a reply whose brackets are off by one at
the end is repaired before being rejected.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Mapping

import requests

from .formula import Formula, ParseError, check_well_formed, parse_formula
from .grader import normalize_text
from .signature import FOL_KIND, PROP_KIND, Signature, render_notation_block, signature_fingerprint

TRANSPORT = "transport"
MALFORMED = "malformed-output"
REFUSED = "refused"

STOP_SYMBOL = "§"  # ends each worked example in few-shot prompts

_SENTINEL_NOT_EXPRESSIBLE = {"not expressable", "not expressible"}
_SENTINEL_ERROR = {"error"}

CLAIM = "claim"
ASSUMPTION = "assumption"
_STEP_KIND_TAGS = {"claim": CLAIM, "beh": CLAIM,
                   "assumption": ASSUMPTION, "vss": ASSUMPTION}


# --- Output variants ---

@dataclass(frozen=True)
class Formalized:
    formula: Formula
    raw: str


@dataclass(frozen=True)
class NotExpressible:
    raw: str


@dataclass(frozen=True)
class BackendError:
    kind: str  # transport | malformed-output | refused
    detail: str
    raw: str = ""


FormalizationOutput = Formalized | NotExpressible | BackendError


@dataclass(frozen=True)
class ClassifiedFormalized:
    step_kind: str  # claim | assumption
    formula: Formula
    raw: str


ClassifiedOutput = ClassifiedFormalized | NotExpressible | BackendError


# --- Backend configurations ---

@dataclass(frozen=True)
class ScriptedBackend:
    """Replies keyed by (signature fingerprint, whitespace-normalized sentence)."""

    table: Mapping[tuple[str, str], str]

    @classmethod
    def for_signature(cls, sig: Signature, replies: Mapping[str, str]) -> "ScriptedBackend":
        fp = signature_fingerprint(sig)
        return cls({(fp, normalize_text(s)): raw for s, raw in replies.items()})

    def merged_with(self, other: "ScriptedBackend") -> "ScriptedBackend":
        return ScriptedBackend({**self.table, **other.table})


@dataclass(frozen=True)
class RemoteBackend:
    """Generic chat-completion endpoint; the API key comes from the environment."""

    endpoint: str
    model: str
    temperature: float = 0.0
    api_key_env: str | None = None
    timeout_ms: int = 30000


BackendConfig = ScriptedBackend | RemoteBackend


# --- Prompt templates ---

@dataclass(frozen=True)
class FewShotExample:
    notation: str  # notation:{...} wire form
    sentence: str
    answer: str


@dataclass(frozen=True)
class FewShotTemplate:
    examples: tuple[FewShotExample, ...] = ()


@dataclass(frozen=True)
class InstructionTemplate:
    kind: str  # "prop" | "fol"


PromptTemplate = FewShotTemplate | InstructionTemplate


def build_fewshot_prompt(tpl: FewShotTemplate, sig: Signature, sentence: str) -> str:
    """Worked examples, each closed by the stop symbol, then the open query."""
    parts = [f"{ex.notation}{ex.sentence}#{ex.answer}{STOP_SYMBOL}"
             for ex in tpl.examples]
    parts.append(f"{render_notation_block(sig)}{sentence}#")
    return "".join(parts)


def build_instruction_prompt(kind: str, sig: Signature) -> str:
    """Instruction-style prompt: task line, notation list, fallback clause."""
    if kind != sig.kind:
        raise ValueError(f"prompt kind {kind!r} does not match signature kind {sig.kind!r}")
    if kind == PROP_KIND:
        lines = ["Express the sentence as a formula in propositional logic, "
                 "using the given notation.", "", "Notation:", ""]
        lines += [f'- {p.symbol}:"{p.gloss}"' for p in sig.props]
        lines += ["", 'If the given sentence cannot be expressed with the given '
                      'notation, return "not expressable".']
        return "\n".join(lines)
    if kind == FOL_KIND:
        lines = ["Express the given sentence as a formula in first-order logic, "
                 "using the following notation:", ""]
        for p in sig.preds:
            placeholders = ",".join("xyzw"[:p.arity])
            lines.append(f"- {p.symbol}({placeholders}):{p.gloss}")
        lines += [f"- {c.symbol}:{c.gloss}" for c in sig.consts]
        lines += ["", 'If the given sentence cannot be expressed with the given '
                      'notation, return "not expressible".',
                  "No comment or explanation; only return the formula."]
        return "\n".join(lines)
    raise ValueError(f"unknown prompt kind {kind!r}")


# --- Reply parsing ---

_FENCE = re.compile(r"\A```[A-Za-z0-9_-]*\s*\n(.*?)\n?```\s*\Z", re.DOTALL)
_QUOTES = "\"'“”‘’`"


def _clean_reply(raw: str) -> str:
    text = raw.strip()
    fence = _FENCE.match(text)
    if fence:
        text = fence.group(1).strip()
    text = text.strip("`").strip()
    while len(text) >= 2 and text[0] in _QUOTES and text[-1] in _QUOTES:
        text = text[1:-1].strip()
    text = text.strip(_QUOTES).strip()
    if text.endswith("."):
        text = text[:-1].rstrip()
    return text


def _repair_brackets(text: str) -> str | None:
    """Fix a single missing or stray closing bracket at the end, if any."""
    for opener, closer in (("(", ")"), ("[", "]")):
        delta = text.count(opener) - text.count(closer)
        if delta == 1:
            return text + closer
        if delta == -1 and text.endswith(closer):
            return text[:-1].rstrip()
    return None


def _parse_with_repair(text: str) -> Formula:
    try:
        return parse_formula(text)
    except ParseError as first_error:
        repaired = _repair_brackets(text)
        if repaired is None:
            raise first_error
        return parse_formula(repaired)


def parse_model_output(raw: str, sig: Signature) -> FormalizationOutput:
    """Interpret a raw backend reply against the exercise signature."""
    text = _clean_reply(raw)
    lowered = text.lower()
    if lowered in _SENTINEL_ERROR:
        return BackendError(REFUSED, "backend reported an error", raw)
    if lowered in _SENTINEL_NOT_EXPRESSIBLE:
        return NotExpressible(raw)
    if not text:
        return BackendError(MALFORMED, "empty reply", raw)
    try:
        formula = _parse_with_repair(text)
    except ParseError as error:
        return BackendError(MALFORMED, str(error), raw)
    problems = check_well_formed(formula, sig)
    if problems:
        return BackendError(
            MALFORMED, "; ".join(p.message for p in problems), raw)
    return Formalized(formula, raw)


_CLASSIFIED = re.compile(r"\A\[\s*([A-Za-z]+)\s*,\s*(.*)\]\s*\Z", re.DOTALL)


def parse_classified_output(raw: str, sig: Signature) -> ClassifiedOutput:
    """Interpret a classified reply of the shape ``[tag,<formula>]``."""
    text = _clean_reply(raw)
    lowered = text.lower()
    if lowered in _SENTINEL_ERROR:
        return BackendError(REFUSED, "backend reported an error", raw)
    if lowered in _SENTINEL_NOT_EXPRESSIBLE:
        return NotExpressible(raw)
    repaired = _repair_brackets(text)
    if repaired is not None:
        text = repaired
    m = _CLASSIFIED.match(text)
    if not m:
        return BackendError(MALFORMED, "expected [claim|assumption, formula]", raw)
    tag = m.group(1).lower()
    if tag not in _STEP_KIND_TAGS:
        return BackendError(MALFORMED, f"unknown step classification {m.group(1)!r}", raw)
    body = m.group(2).strip()
    try:
        formula = _parse_with_repair(body)
    except ParseError as error:
        return BackendError(MALFORMED, str(error), raw)
    problems = check_well_formed(formula, sig)
    if problems:
        return BackendError(MALFORMED, "; ".join(p.message for p in problems), raw)
    return ClassifiedFormalized(_STEP_KIND_TAGS[tag], formula, raw)


# --- Invoking backends ---

def _scripted_lookup(backend: ScriptedBackend, sig: Signature, sentence: str) -> str | BackendError:
    key = (signature_fingerprint(sig), normalize_text(sentence))
    if key not in backend.table:
        return BackendError(TRANSPORT, "no scripted reply for this sentence")
    return backend.table[key]


def _remote_request(backend: RemoteBackend, prompt: str) -> str | BackendError:
    headers = {"Content-Type": "application/json"}
    if backend.api_key_env:
        key = os.environ.get(backend.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
    body = {
        "model": backend.model,
        "temperature": backend.temperature,
        "messages": [{"role": "user", "content": prompt}],
    }
    timeout = backend.timeout_ms / 1000.0
    last_error = ""
    for attempt in range(2):  # at most one retry, and only on transport faults
        try:
            response = requests.post(backend.endpoint, json=body,
                                     headers=headers, timeout=timeout)
        except requests.RequestException as exc:
            last_error = str(exc)
            continue
        if 400 <= response.status_code < 500:
            return BackendError(TRANSPORT, f"HTTP {response.status_code}")
        if response.status_code >= 500:
            last_error = f"HTTP {response.status_code}"
            continue
        try:
            data = response.json()
            choice = data["choices"][0]
            return choice["message"]["content"] if "message" in choice else choice["text"]
        except (ValueError, LookupError, TypeError) as exc:
            return BackendError(MALFORMED, f"unexpected reply shape: {exc}")
    return BackendError(TRANSPORT, last_error or "request failed")


def _obtain_raw(backend: BackendConfig, sig: Signature, sentence: str,
                template: PromptTemplate | None) -> str | BackendError:
    if not normalize_text(sentence):
        raise ValueError("cannot formalize an empty sentence")
    if isinstance(backend, ScriptedBackend):
        return _scripted_lookup(backend, sig, sentence)
    template = template or InstructionTemplate(sig.kind)
    if isinstance(template, FewShotTemplate):
        prompt = build_fewshot_prompt(template, sig, sentence)
    else:
        prompt = build_instruction_prompt(template.kind, sig) + "\n\n" + sentence
    return _remote_request(backend, prompt)


def formalize(backend: BackendConfig, sig: Signature, sentence: str,
              template: PromptTemplate | None = None) -> FormalizationOutput:
    """Formalize a sentence; deterministic whenever the backend is scripted."""
    raw = _obtain_raw(backend, sig, sentence, template)
    if isinstance(raw, BackendError):
        return raw
    return parse_model_output(raw, sig)


def formalize_with_kind(backend: BackendConfig, sig: Signature, sentence: str,
                        template: PromptTemplate | None = None) -> ClassifiedOutput:
    """Formalize one argument step, classified as a claim or an assumption."""
    raw = _obtain_raw(backend, sig, sentence, template)
    if isinstance(raw, BackendError):
        return raw
    return parse_classified_output(raw, sig)


# Bundled few-shot example sets.  These reconstruct the style of prompt the
# engine sends: real prompt sets are larger, but only a handful of worked
# examples are needed to fix the output format.

FEWSHOT_PROP = FewShotTemplate(examples=(
    FewShotExample(
        "notation:{S:Fritz takes a boat;F:Fritz takes a plane;"
        "A:Fritz arrives in America;K:Fritz tries to swim}",
        "Fritz arrives in America if and only if he takes a boat or a plane, "
        "but not if he tries to swim.",
        "((S∨F)↔A)∧(K→¬A)"),
    FewShotExample(
        "notation:{S:The sun shines;R:It rains}",
        "It's neither sunny nor rainy.",
        "¬S∧¬R"),
    FewShotExample(
        "notation:{S:The sun shines;R:It rains}",
        "Tuesday is a day of thunderstorms.",
        "not expressable"),
))

FEWSHOT_PROP_CLASSIFIED = FewShotTemplate(examples=(
    FewShotExample(
        "notation:{W:This is supposed to be a joke;L:This is supposed to be funny;"
        "N:This is new}",
        "If this is supposed to be a joke, it is neither funny nor new.",
        "[claim,[W,→,[neg,[L,or,N]]]]"),
    FewShotExample(
        "notation:{S:The sun shines}",
        "Suppose the sun shines.",
        "[vss,[S]]"),
))

FEWSHOT_FOL = FewShotTemplate(examples=(
    FewShotExample(
        "notation:{B(x,y):x is the brother of y;S(x,y):x is the sister of y}",
        "The sister of someone's brother is that someone's sister.",
        "∀x:∀z:(∃y:(B(x,y)∧S(y,z))→S(x,z))"),
    FewShotExample(
        "notation:{D(x):x is a dog;fr:Fritz}",
        "Fritz is a dog.",
        "D(fr)"),
))
