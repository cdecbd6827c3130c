"""Notation blocks: the vocabulary an exercise is stated in.

A signature lists proposition letters (propositional exercises) or
predicates and constants (first-order exercises), each with a
natural-language gloss.  Glosses are opaque to the engine; only
formalization backends ever interpret them.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from .formula import IDENT_RE

PLACEHOLDERS = ("x", "y", "z", "w")

PROP_KIND = "prop"
FOL_KIND = "fol"


class SignatureError(ValueError):
    """Invalid signature or notation text.

    ``kind`` is one of: duplicate-symbol, malformed-entry, kind-mismatch,
    placeholder-count, bad-symbol, bad-arity.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


@dataclass(frozen=True)
class PropDecl:
    symbol: str
    gloss: str


@dataclass(frozen=True)
class PredDecl:
    symbol: str
    arity: int
    gloss: str  # template containing the placeholders x, y, ... once per argument


@dataclass(frozen=True)
class ConstDecl:
    symbol: str
    gloss: str


@dataclass(frozen=True)
class Signature:
    kind: str  # "prop" | "fol"
    props: tuple[PropDecl, ...] = ()
    preds: tuple[PredDecl, ...] = ()
    consts: tuple[ConstDecl, ...] = ()

    def symbols(self) -> list[str]:
        return ([p.symbol for p in self.props]
                + [p.symbol for p in self.preds]
                + [c.symbol for c in self.consts])


def validate_signature(sig: Signature) -> list[SignatureError]:
    """All invariant violations at once; empty list means the signature is valid."""
    errors: list[SignatureError] = []
    if sig.kind not in (PROP_KIND, FOL_KIND):
        errors.append(SignatureError("kind-mismatch", f"unknown kind {sig.kind!r}"))
        return errors

    seen: set[str] = set()
    for sym in sig.symbols():
        if not IDENT_RE.fullmatch(sym):
            errors.append(SignatureError("bad-symbol", f"invalid symbol {sym!r}"))
        if sym in seen:
            errors.append(SignatureError("duplicate-symbol", f"symbol {sym!r} declared twice"))
        seen.add(sym)

    if sig.kind == PROP_KIND and (sig.preds or sig.consts):
        errors.append(SignatureError(
            "kind-mismatch", "propositional signatures take proposition letters only"))
    if sig.kind == FOL_KIND and sig.props:
        errors.append(SignatureError(
            "kind-mismatch", "first-order signatures take predicates and constants only"))

    for pred in sig.preds:
        if pred.arity < 1:
            errors.append(SignatureError("bad-arity", f"{pred.symbol!r} has arity {pred.arity}"))
            continue
        if pred.arity > len(PLACEHOLDERS):
            errors.append(SignatureError("bad-arity", f"{pred.symbol!r} arity too large"))
            continue
        wanted = set(PLACEHOLDERS[:pred.arity])
        found = {w for w in re.findall(r"[A-Za-z]+", pred.gloss) if w in PLACEHOLDERS}
        if found != wanted:
            errors.append(SignatureError(
                "placeholder-count",
                f"gloss for {pred.symbol!r} must use exactly the placeholders "
                f"{', '.join(sorted(wanted))}; found {', '.join(sorted(found)) or 'none'}"))
    return errors


def _checked(sig: Signature) -> Signature:
    errors = validate_signature(sig)
    if errors:
        raise errors[0]
    return sig


def parse_notation_block(text: str) -> Signature:
    """Parse the ``notation:{sym:gloss;...}`` wire form.

    Predicate entries are recognized by a ``sym(x,...)`` head.  A block
    containing at least one predicate is first-order and its plain entries
    are constants; otherwise the block is propositional.
    """
    m = re.fullmatch(r"\s*notation:\{(.*)\}\s*", text, re.DOTALL)
    if not m:
        raise SignatureError("malformed-entry", "expected notation:{...}")
    body = m.group(1)
    entries = [e for e in body.split(";") if e.strip()]

    preds: list[PredDecl] = []
    plain: list[tuple[str, str]] = []
    for entry in entries:
        head, sep, gloss = entry.partition(":")
        if not sep:
            raise SignatureError("malformed-entry", f"missing ':' in {entry!r}")
        head = head.strip()
        pm = re.fullmatch(r"([A-Za-z][A-Za-z0-9_]*)\(([^)]*)\)", head)
        if pm:
            args = [a.strip() for a in pm.group(2).split(",")]
            preds.append(PredDecl(pm.group(1), len(args), gloss.strip()))
        elif IDENT_RE.fullmatch(head):
            plain.append((head, gloss.strip()))
        else:
            raise SignatureError("malformed-entry", f"bad symbol {head!r}")

    if preds:
        sig = Signature(FOL_KIND, preds=tuple(preds),
                        consts=tuple(ConstDecl(s, g) for s, g in plain))
    else:
        sig = Signature(PROP_KIND, props=tuple(PropDecl(s, g) for s, g in plain))

    duplicates = _first_duplicate(sig.symbols())
    if duplicates is not None:
        raise SignatureError("duplicate-symbol", f"symbol {duplicates!r} declared twice")
    return sig


def _first_duplicate(symbols: list[str]) -> str | None:
    seen: set[str] = set()
    for s in symbols:
        if s in seen:
            return s
        seen.add(s)
    return None


def render_notation_block(sig: Signature) -> str:
    """Inverse of :func:`parse_notation_block`, up to entry order."""
    parts = [f"{p.symbol}:{p.gloss}" for p in sig.props]
    for p in sig.preds:
        head = f"{p.symbol}({','.join(PLACEHOLDERS[:p.arity])})"
        parts.append(f"{head}:{p.gloss}")
    parts.extend(f"{c.symbol}:{c.gloss}" for c in sig.consts)
    return "notation:{" + ";".join(parts) + "}"


def signature_fingerprint(sig: Signature) -> str:
    """Stable content hash, insensitive to the order of declarations."""
    lines = sorted(
        [f"p\x00{p.symbol}\x00{p.gloss}" for p in sig.props]
        + [f"r\x00{p.symbol}\x00{p.arity}\x00{p.gloss}" for p in sig.preds]
        + [f"c\x00{c.symbol}\x00{c.gloss}" for c in sig.consts]
    )
    payload = "\x01".join([sig.kind, *lines])
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def make_signature(kind: str,
                   props: list[tuple[str, str]] | None = None,
                   preds: list[tuple[str, int, str]] | None = None,
                   consts: list[tuple[str, str]] | None = None) -> Signature:
    """Convenience constructor that validates before returning."""
    return _checked(Signature(
        kind,
        props=tuple(PropDecl(s, g) for s, g in (props or [])),
        preds=tuple(PredDecl(s, a, g) for s, a, g in (preds or [])),
        consts=tuple(ConstDecl(s, g) for s, g in (consts or [])),
    ))
