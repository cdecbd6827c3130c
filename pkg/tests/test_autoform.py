"""Prompt construction, reply parsing, and backend behavior."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from logictutor.autoform import (
    ASSUMPTION, CLAIM, MALFORMED, REFUSED, TRANSPORT, BackendError,
    ClassifiedFormalized, FewShotExample, FewShotTemplate, Formalized,
    NotExpressible, RemoteBackend, ScriptedBackend,
    build_fewshot_prompt, build_instruction_prompt, formalize,
    formalize_with_kind, parse_classified_output, parse_model_output,
)
from logictutor.formula import Implies, Not, Or, PropAtom, parse_formula, render_formula
from logictutor.signature import make_signature

PROP_SIG = make_signature("prop", props=[
    ("S", "The sun shines"), ("R", "It rains"), ("P", "There will be a party"),
    ("M", "It is Monday"), ("A", "Andreas will attend the party"),
    ("B", "Barbara will attend the party"),
    ("C", "The moon is made of green cheese"),
    ("G", "There is a giraffe on the moon")])

DOG_SIG = make_signature("fol", preds=[
    ("D", 1, "x is a dog"), ("B", 1, "x barks"), ("S", 1, "x bites"),
    ("L", 2, "x is larger than y")],
    consts=[("fr", "Fritz"), ("he", "Hector")])

JOKE_SIG = make_signature("prop", props=[
    ("W", "This is supposed to be a joke"),
    ("L", "This is supposed to be funny"), ("N", "This is new")])


class TestFewShotPrompt:
    TPL = FewShotTemplate(examples=(
        FewShotExample("notation:{S:Fritz takes a boat;F:Fritz takes a plane;"
                       "A:Fritz arrives in America;K:Fritz tries to swim}",
                       "Fritz arrives in America if and only if he takes a boat "
                       "or a plane, but not if he tries to swim.",
                       "((S∨F)↔A)∧(K→¬A)"),
    ))

    def test_query_ends_with_separator(self):
        prompt = build_fewshot_prompt(self.TPL, PROP_SIG, "It rains.")
        assert prompt.endswith("It rains.#")
        assert not prompt.endswith("§")

    def test_example_answer_embedded_verbatim(self):
        prompt = build_fewshot_prompt(self.TPL, PROP_SIG, "It rains.")
        assert "((S∨F)↔A)∧(K→¬A)§" in prompt
        assert "#((S∨F)↔A)∧(K→¬A)§" in prompt

    def test_zero_shot_degenerate(self):
        prompt = build_fewshot_prompt(FewShotTemplate(), PROP_SIG, "It rains.")
        assert prompt == (
            "notation:{S:The sun shines;R:It rains;P:There will be a party;"
            "M:It is Monday;A:Andreas will attend the party;"
            "B:Barbara will attend the party;C:The moon is made of green cheese;"
            "G:There is a giraffe on the moon}It rains.#")


PROP_PROMPT_GOLDEN = """Express the sentence as a formula in propositional logic, using the given notation.

Notation:

- S:"The sun shines"
- R:"It rains"
- P:"There will be a party"
- M:"It is Monday"
- A:"Andreas will attend the party"
- B:"Barbara will attend the party"
- C:"The moon is made of green cheese"
- G:"There is a giraffe on the moon"

If the given sentence cannot be expressed with the given notation, return "not expressable"."""

FOL_PROMPT_GOLDEN = """Express the given sentence as a formula in first-order logic, using the following notation:

- D(x):x is a dog
- B(x):x barks
- S(x):x bites
- L(x,y):x is larger than y
- fr:Fritz
- he:Hector

If the given sentence cannot be expressed with the given notation, return "not expressible".
No comment or explanation; only return the formula."""


class TestInstructionPrompt:
    def test_prop_golden(self):
        assert build_instruction_prompt("prop", PROP_SIG) == PROP_PROMPT_GOLDEN
        assert 'S:"The sun shines"' in PROP_PROMPT_GOLDEN

    def test_fol_golden(self):
        prompt = build_instruction_prompt("fol", DOG_SIG)
        assert prompt == FOL_PROMPT_GOLDEN
        assert ('If the given sentence cannot be expressed with the given '
                'notation, return "not expressible".') in prompt
        assert prompt.endswith("No comment or explanation; only return the formula.")

    def test_byte_identical_across_runs(self):
        assert (build_instruction_prompt("prop", PROP_SIG)
                == build_instruction_prompt("prop", PROP_SIG))

    def test_kind_must_match_signature(self):
        with pytest.raises(ValueError):
            build_instruction_prompt("fol", PROP_SIG)


class TestParseModelOutput:
    def test_code_fence_stripped(self):
        out = parse_model_output("```\n(M→(C∧G))\n```", PROP_SIG)
        assert isinstance(out, Formalized)
        assert out.formula == parse_formula("M→(C∧G)")

    def test_backticks_and_quotes(self):
        out = parse_model_output("`¬S∧¬R`", PROP_SIG)
        assert isinstance(out, Formalized)
        out = parse_model_output('"M→R"', PROP_SIG)
        assert isinstance(out, Formalized)

    def test_sentinels(self):
        assert isinstance(parse_model_output("not expressable", PROP_SIG), NotExpressible)
        assert isinstance(parse_model_output("Not Expressible.", PROP_SIG), NotExpressible)
        refusal = parse_model_output("error", PROP_SIG)
        assert isinstance(refusal, BackendError) and refusal.kind == REFUSED

    def test_trailing_period_stripped(self):
        out = parse_model_output("not expressible.", DOG_SIG)
        assert isinstance(out, NotExpressible)

    def test_missing_bracket_repaired(self):
        out = parse_model_output("(S→(A∧B)", PROP_SIG)
        assert isinstance(out, Formalized)
        assert out.formula == parse_formula("S→(A∧B)")

    def test_stray_bracket_stripped(self):
        out = parse_model_output("(M∧R)→¬A)", PROP_SIG)
        assert isinstance(out, Formalized)
        assert out.formula == parse_formula("(M∧R)→¬A")

    def test_two_missing_brackets_not_repaired(self):
        out = parse_model_output("((S→(A∧B)", PROP_SIG)
        assert isinstance(out, BackendError) and out.kind == MALFORMED

    def test_prose_is_malformed(self):
        out = parse_model_output("The answer is 42.", PROP_SIG)
        assert isinstance(out, BackendError) and out.kind == MALFORMED

    def test_ill_formed_formula_rejected(self):
        out = parse_model_output("Q∧S", PROP_SIG)
        assert isinstance(out, BackendError) and out.kind == MALFORMED

    def test_echo_stability_for_corpus_golds(self):
        from logictutor.corpus import NOT_EXPRESSIBLE, load_bundled_benchmark
        for name in ("prop_bench.json", "fol_bench.json"):
            bench = load_bundled_benchmark(name)
            for row in bench.rows:
                for gold in row.gold:
                    if gold == NOT_EXPRESSIBLE:
                        continue
                    echoed = parse_model_output(render_formula(gold), bench.signature)
                    assert isinstance(echoed, Formalized), (name, row.id)
                    assert echoed.formula == gold


class TestScriptedBackend:
    def test_deterministic_lookup(self):
        backend = ScriptedBackend.for_signature(PROP_SIG, {
            "It's neither sunny nor rainy.": "¬S∧¬R"})
        for _ in range(3):
            out = formalize(backend, PROP_SIG, "It's neither sunny nor rainy.")
            assert isinstance(out, Formalized)
            assert out.formula == parse_formula("¬S∧¬R")

    def test_lookup_normalizes_whitespace(self):
        backend = ScriptedBackend.for_signature(PROP_SIG, {"It  rains.": "R"})
        out = formalize(backend, PROP_SIG, "It rains.")
        assert isinstance(out, Formalized)

    def test_miss_is_transport_error(self):
        backend = ScriptedBackend.for_signature(PROP_SIG, {})
        out = formalize(backend, PROP_SIG, "Unknown sentence.")
        assert isinstance(out, BackendError) and out.kind == TRANSPORT

    def test_empty_sentence_rejected(self):
        backend = ScriptedBackend.for_signature(PROP_SIG, {})
        with pytest.raises(ValueError):
            formalize(backend, PROP_SIG, "  ")


class TestClassifiedOutput:
    def test_claim(self):
        out = parse_classified_output("[claim,[W,→,[neg,[L,or,N]]]]", JOKE_SIG)
        assert isinstance(out, ClassifiedFormalized)
        assert out.step_kind == CLAIM
        assert out.formula == Implies(PropAtom("W"), Not(Or(PropAtom("L"), PropAtom("N"))))

    def test_assumption_tags(self):
        for tag in ("vss", "assumption"):
            out = parse_classified_output(f"[{tag},[W]]", JOKE_SIG)
            assert isinstance(out, ClassifiedFormalized)
            assert out.step_kind == ASSUMPTION

    def test_claim_alias(self):
        out = parse_classified_output("[beh,[W]]", JOKE_SIG)
        assert isinstance(out, ClassifiedFormalized) and out.step_kind == CLAIM

    def test_unknown_tag_malformed(self):
        out = parse_classified_output("[maybe,[W]]", JOKE_SIG)
        assert isinstance(out, BackendError) and out.kind == MALFORMED

    def test_missing_tag_malformed(self):
        out = parse_classified_output("W→L", JOKE_SIG)
        assert isinstance(out, BackendError) and out.kind == MALFORMED

    def test_through_backend(self):
        backend = ScriptedBackend.for_signature(JOKE_SIG, {"Assume it.": "[vss,[W]]"})
        out = formalize_with_kind(backend, JOKE_SIG, "Assume it.")
        assert isinstance(out, ClassifiedFormalized)
        assert out.step_kind == ASSUMPTION


class _FakeResponse:
    def __init__(self, status_code: int, payload=None):
        self.status_code = status_code
        self._payload = payload

    def json(self):
        if self._payload is None:
            raise ValueError("no body")
        return self._payload


class TestRemoteBackend:
    BACKEND = RemoteBackend(endpoint="http://localhost:9/v1/chat", model="local-model",
                            temperature=0.0, api_key_env="TUTOR_API_KEY",
                            timeout_ms=500)

    def test_successful_roundtrip(self, monkeypatch):
        calls = []

        def fake_post(url, json=None, headers=None, timeout=None):
            calls.append((url, json, headers, timeout))
            return _FakeResponse(200, {"choices": [{"message": {"content": "¬S∧¬R"}}]})

        monkeypatch.setattr("logictutor.autoform.requests.post", fake_post)
        monkeypatch.setenv("TUTOR_API_KEY", "secret-key")
        out = formalize(self.BACKEND, PROP_SIG, "It's neither sunny nor rainy.")
        assert isinstance(out, Formalized)
        (url, body, headers, timeout) = calls[0]
        assert url == "http://localhost:9/v1/chat"
        assert body["model"] == "local-model"
        assert body["temperature"] == 0.0
        assert body["messages"][0]["role"] == "user"
        assert "It's neither sunny nor rainy." in body["messages"][0]["content"]
        assert headers["Authorization"] == "Bearer secret-key"
        assert timeout == 0.5

    def test_no_retry_on_4xx(self, monkeypatch):
        calls = []

        def fake_post(url, **kwargs):
            calls.append(url)
            return _FakeResponse(401)

        monkeypatch.setattr("logictutor.autoform.requests.post", fake_post)
        out = formalize(self.BACKEND, PROP_SIG, "It rains.")
        assert isinstance(out, BackendError) and out.kind == TRANSPORT
        assert len(calls) == 1

    def test_one_retry_on_transport_error(self, monkeypatch):
        import requests as requests_module
        calls = []

        def fake_post(url, **kwargs):
            calls.append(url)
            if len(calls) == 1:
                raise requests_module.ConnectionError("refused")
            return _FakeResponse(200, {"choices": [{"message": {"content": "R"}}]})

        monkeypatch.setattr("logictutor.autoform.requests.post", fake_post)
        out = formalize(self.BACKEND, PROP_SIG, "It rains.")
        assert isinstance(out, Formalized)
        assert len(calls) == 2

    def test_retry_on_5xx_then_give_up(self, monkeypatch):
        calls = []

        def fake_post(url, **kwargs):
            calls.append(url)
            return _FakeResponse(503)

        monkeypatch.setattr("logictutor.autoform.requests.post", fake_post)
        out = formalize(self.BACKEND, PROP_SIG, "It rains.")
        assert isinstance(out, BackendError) and out.kind == TRANSPORT
        assert len(calls) == 2

    def test_unexpected_reply_shape(self, monkeypatch):
        monkeypatch.setattr("logictutor.autoform.requests.post",
                            lambda url, **kwargs: _FakeResponse(200, {"oops": 1}))
        out = formalize(self.BACKEND, PROP_SIG, "It rains.")
        assert isinstance(out, BackendError) and out.kind == MALFORMED

    def test_fewshot_template_used_verbatim(self, monkeypatch):
        captured = {}

        def fake_post(url, json=None, **kwargs):
            captured["prompt"] = json["messages"][0]["content"]
            return _FakeResponse(200, {"choices": [{"message": {"content": "R"}}]})

        monkeypatch.setattr("logictutor.autoform.requests.post", fake_post)
        tpl = FewShotTemplate(examples=(
            FewShotExample("notation:{R:It rains}", "Water falls.", "R"),))
        formalize(self.BACKEND, PROP_SIG, "It rains.", tpl)
        assert captured["prompt"].startswith("notation:{R:It rains}Water falls.#R§")
        assert captured["prompt"].endswith("It rains.#")


@given(st.text(max_size=60))
@settings(max_examples=120, deadline=None)
def test_fuzzed_replies_never_yield_ill_formed_formulas(raw):
    from logictutor.formula import check_well_formed
    out = parse_model_output(raw, PROP_SIG)
    if isinstance(out, Formalized):
        assert check_well_formed(out.formula, PROP_SIG) == []


class TestBundledTemplates:
    def test_bundled_fewshot_sets_build_prompts(self):
        from logictutor.autoform import FEWSHOT_FOL, FEWSHOT_PROP, FEWSHOT_PROP_CLASSIFIED
        for template in (FEWSHOT_PROP, FEWSHOT_PROP_CLASSIFIED, FEWSHOT_FOL):
            assert template.examples
            prompt = build_fewshot_prompt(template, PROP_SIG, "A test sentence.")
            assert prompt.count("§") == len(template.examples)
            assert prompt.endswith("A test sentence.#")

    def test_classified_template_answers_parse(self):
        from logictutor.autoform import FEWSHOT_PROP_CLASSIFIED
        from logictutor.signature import parse_notation_block
        for example in FEWSHOT_PROP_CLASSIFIED.examples:
            sig = parse_notation_block(example.notation)
            out = parse_classified_output(example.answer, sig)
            assert isinstance(out, ClassifiedFormalized)
