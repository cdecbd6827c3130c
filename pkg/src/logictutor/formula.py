"""Shared formula language: AST, concrete-syntax parser, printer, and structural helpers.

One AST covers both propositional and first-order formulas.  The parser
accepts three surface dialects:

* Unicode operators:  ``¬ ∧ ∨ ⊻ → ↔ ∀ ∃ = ≠``
* ASCII operators:    ``~ & | ^ -> <-> forall/A exists/E = !=``
* Nested-bracket lists as emitted by some formalization backends,
  e.g. ``[W,→,[neg,[L,or,N]]]``.

LaTeX spellings of the eight operators (``\\wedge``, ``\\vee``, ``\\veebar``,
``\\rightarrow``, ``\\leftrightarrow``, ``\\neg``, ``\\forall``, ``\\exists``)
are normalized during tokenization; any other macro is an unknown symbol.

Operator precedence, tightest first: ``¬`` > ``∧`` > ``∨`` > ``⊻`` > ``→`` >
``↔``; the two arrows associate to the right, ``∧ ∨ ⊻`` to the left.
Quantifiers are written ``∀x: body`` (scope extends right as far as
possible), ``∀x(body)``, or ``∀x`` directly followed by a unary formula.

In term position, identifiers matching ``[u-z][0-9_]*`` are variables;
everything else is a constant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
VARIABLE_RE = re.compile(r"[u-z][0-9_]*\Z")

UNICODE_STYLE = "unicode"
ASCII_STYLE = "ascii"


# --- Terms ---

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


Term = Union[Var, Const]


# --- Formulas ---

@dataclass(frozen=True)
class PropAtom:
    name: str


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Equal:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Xor:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[
    PropAtom, Pred, Equal, Not, And, Or, Xor, Implies, Iff, Forall, Exists
]

BINARY_TYPES = (And, Or, Xor, Implies, Iff)
QUANTIFIER_TYPES = (Forall, Exists)


class ParseError(ValueError):
    """Syntax or well-formedness problem, with a character offset.

    ``kind`` is one of: unexpected-token, unbalanced-bracket, unknown-symbol,
    arity-mismatch, unbound-variable, empty-input, kind-mismatch.
    """

    def __init__(self, kind: str, position: int, message: str):
        super().__init__(f"{kind} at {position}: {message}")
        self.kind = kind
        self.position = position
        self.message = message


# --- Tokenizer ---

_LATEX_MACROS = {
    "wedge": "∧",
    "vee": "∨",
    "veebar": "⊻",
    "rightarrow": "→",
    "leftrightarrow": "↔",
    "neg": "¬",
    "forall": "∀",
    "exists": "∃",
}

_SINGLE_CHAR = {
    "(": "LPAREN",
    ")": "RPAREN",
    "[": "LBRACKET",
    "]": "RBRACKET",
    ",": "COMMA",
    ":": "COLON",
    "¬": "NOT",
    "~": "NOT",
    "∧": "AND",
    "&": "AND",
    "∨": "OR",
    "|": "OR",
    "⊻": "XOR",
    "^": "XOR",
    "→": "IMPLIES",
    "↔": "IFF",
    "∀": "FORALL",
    "∃": "EXISTS",
    "=": "EQ",
    "≠": "NEQ",
}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace() or ch in "{}":
            i += 1
            continue
        if text.startswith("<->", i):
            tokens.append(_Token("IFF", "<->", i))
            i += 3
            continue
        if text.startswith("->", i):
            tokens.append(_Token("IMPLIES", "->", i))
            i += 2
            continue
        if text.startswith("!=", i):
            tokens.append(_Token("NEQ", "!=", i))
            i += 2
            continue
        if ch == "\\":
            m = re.match(r"[A-Za-z]+", text[i + 1:])
            name = m.group(0) if m else ""
            if name not in _LATEX_MACROS:
                raise ParseError("unknown-symbol", i, f"unknown macro \\{name}")
            tokens.append(_Token(_SINGLE_CHAR[_LATEX_MACROS[name]], "\\" + name, i))
            i += 1 + len(name)
            continue
        if ch in _SINGLE_CHAR:
            tokens.append(_Token(_SINGLE_CHAR[ch], ch, i))
            i += 1
            continue
        m = IDENT_RE.match(text, i)
        if m:
            word = m.group(0)
            if word == "forall":
                tokens.append(_Token("FORALL", word, i))
            elif word == "exists":
                tokens.append(_Token("EXISTS", word, i))
            else:
                tokens.append(_Token("IDENT", word, i))
            i = m.end()
            continue
        raise ParseError("unknown-symbol", i, f"unexpected character {ch!r}")
    tokens.append(_Token("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead: int = 0) -> _Token:
        j = min(self.i + ahead, len(self.tokens) - 1)
        return self.tokens[j]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            if kind in ("RPAREN", "RBRACKET") and tok.kind == "EOF":
                raise ParseError("unbalanced-bracket", tok.pos, f"expected {what}")
            raise ParseError("unexpected-token", tok.pos,
                             f"expected {what}, found {tok.text or 'end of input'!r}")
        return self.advance()

    # Lowest precedence first; arrows right-associative, the rest left.

    def parse_formula(self) -> Formula:
        return self.parse_iff()

    def parse_iff(self) -> Formula:
        left = self.parse_implies()
        if self.peek().kind == "IFF":
            self.advance()
            return Iff(left, self.parse_iff())
        return left

    def parse_implies(self) -> Formula:
        left = self.parse_xor()
        if self.peek().kind == "IMPLIES":
            self.advance()
            return Implies(left, self.parse_implies())
        return left

    def parse_xor(self) -> Formula:
        left = self.parse_or()
        while self.peek().kind == "XOR":
            self.advance()
            left = Xor(left, self.parse_or())
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.peek().kind == "OR":
            self.advance()
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.peek().kind == "AND":
            self.advance()
            left = And(left, self.parse_unary())
        return left

    def _at_ascii_quantifier(self) -> bool:
        # `A x: ...` / `E x (...)`, possibly chained `A x A y: ...`; bare
        # letters double as proposition names, so look past the chain.
        tok = self.peek()
        if tok.kind != "IDENT" or tok.text not in ("A", "E"):
            return False
        j = 0
        while (self.peek(j).kind == "IDENT" and self.peek(j).text in ("A", "E")
               and self.peek(j + 1).kind == "IDENT"
               and VARIABLE_RE.match(self.peek(j + 1).text)):
            j += 2
        if j == 0:
            return False
        return self.peek(j).kind in ("COLON", "LPAREN", "NOT", "FORALL", "EXISTS")

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "NOT":
            self.advance()
            return Not(self.parse_unary())
        if tok.kind in ("FORALL", "EXISTS") or self._at_ascii_quantifier():
            return self.parse_quantifier()
        return self.parse_atom()

    def parse_quantifier(self) -> Formula:
        tok = self.advance()
        if tok.kind == "IDENT":
            ctor = Forall if tok.text == "A" else Exists
        else:
            ctor = Forall if tok.kind == "FORALL" else Exists
        var_tok = self.expect("IDENT", "a quantified variable")
        if not VARIABLE_RE.match(var_tok.text):
            raise ParseError("unexpected-token", var_tok.pos,
                             f"{var_tok.text!r} cannot be a quantified variable")
        nxt = self.peek()
        if nxt.kind == "COLON":
            self.advance()
            body = self.parse_formula()
        elif nxt.kind == "LPAREN":
            self.advance()
            body = self.parse_formula()
            self.expect("RPAREN", "')' closing the quantifier body")
        else:
            body = self.parse_unary()
        return ctor(var_tok.text, body)

    def parse_atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.parse_formula()
            self.expect("RPAREN", "')'")
            if self.peek().kind in ("EQ", "NEQ"):
                raise ParseError("unexpected-token", self.peek().pos,
                                 "equality applies to terms, not formulas")
            return inner
        if tok.kind == "LBRACKET":
            return self.parse_bracket_list()
        if tok.kind == "IDENT":
            self.advance()
            nxt = self.peek()
            if nxt.kind == "LPAREN":
                self.advance()
                args = [self.parse_term()]
                while self.peek().kind == "COMMA":
                    self.advance()
                    args.append(self.parse_term())
                self.expect("RPAREN", "')' closing the argument list")
                pred = Pred(tok.text, tuple(args))
                if self.peek().kind in ("EQ", "NEQ"):
                    raise ParseError("unexpected-token", self.peek().pos,
                                     "predicates cannot appear in equations")
                return pred
            if nxt.kind in ("EQ", "NEQ"):
                self.advance()
                lhs = _ident_to_term(tok.text)
                rhs = self.parse_term()
                eq = Equal(lhs, rhs)
                return eq if nxt.kind == "EQ" else Not(eq)
            return PropAtom(tok.text)
        if tok.kind == "EOF":
            opens = sum(t.kind in ("LPAREN", "LBRACKET") for t in self.tokens[:self.i])
            closes = sum(t.kind in ("RPAREN", "RBRACKET") for t in self.tokens[:self.i])
            if opens > closes:
                raise ParseError("unbalanced-bracket", tok.pos,
                                 "input ends inside a bracketed group")
            raise ParseError("unexpected-token", tok.pos, "unexpected end of input")
        raise ParseError("unexpected-token", tok.pos, f"unexpected {tok.text!r}")

    def parse_term(self) -> Term:
        tok = self.expect("IDENT", "a term")
        return _ident_to_term(tok.text)

    # Nested-bracket dialect: `[a,op,b]`, `[neg,x]`, `[x]`, bare identifiers.

    def parse_bracket_list(self) -> Formula:
        self.expect("LBRACKET", "'['")
        items: list[Formula | str] = [self.parse_bracket_element()]
        while self.peek().kind == "COMMA":
            self.advance()
            items.append(self.parse_bracket_element())
        closing = self.expect("RBRACKET", "']' closing the list")
        return self._interpret_bracket_items(items, closing.pos)

    def parse_bracket_element(self) -> Formula | str:
        tok = self.peek()
        if tok.kind == "LBRACKET":
            return self.parse_bracket_list()
        if tok.kind == "IDENT":
            self.advance()
            return tok.text
        if tok.kind == "IMPLIES":
            self.advance()
            return "->"
        raise ParseError("unexpected-token", tok.pos,
                         f"unexpected {tok.text!r} in bracketed formula")

    def _interpret_bracket_items(self, items: list[Formula | str], pos: int) -> Formula:
        def as_formula(item: Formula | str) -> Formula:
            if isinstance(item, str):
                if item in ("neg", "and", "or"):
                    raise ParseError("unexpected-token", pos,
                                     f"{item!r} is an operator, not an atom")
                return PropAtom(item)
            return item

        if len(items) == 1:
            return as_formula(items[0])
        if len(items) == 2 and items[0] == "neg":
            return Not(as_formula(items[1]))
        if len(items) == 3 and items[1] in ("and", "or", "->"):
            ctor = {"and": And, "or": Or, "->": Implies}[items[1]]
            return ctor(as_formula(items[0]), as_formula(items[2]))
        raise ParseError("unexpected-token", pos, "unrecognized bracketed form")


def _ident_to_term(name: str) -> Term:
    return Var(name) if VARIABLE_RE.match(name) else Const(name)


def parse_formula(text: str) -> Formula:
    """Parse concrete syntax into a formula; raises :class:`ParseError`."""
    if not text or text.isspace():
        raise ParseError("empty-input", 0, "empty input")
    tokens = _tokenize(text)
    parser = _Parser(tokens)
    formula = parser.parse_formula()
    trailing = parser.peek()
    if trailing.kind != "EOF":
        if trailing.kind in ("RPAREN", "RBRACKET"):
            raise ParseError("unbalanced-bracket", trailing.pos,
                             f"unmatched {trailing.text!r}")
        raise ParseError("unexpected-token", trailing.pos,
                         f"trailing input {trailing.text!r}")
    return formula


# --- Printing ---

_OPS = {
    UNICODE_STYLE: {And: "∧", Or: "∨", Xor: "⊻", Implies: "→", Iff: "↔",
                    Not: "¬", Forall: "∀", Exists: "∃", Equal: "=", "neq": "≠"},
    ASCII_STYLE: {And: "&", Or: "|", Xor: "^", Implies: "->", Iff: "<->",
                  Not: "~", Forall: "forall ", Exists: "exists ",
                  Equal: "=", "neq": "!="},
}


def render_formula(f: Formula, style: str = UNICODE_STYLE) -> str:
    """Print a formula so that reparsing yields a structurally equal one.

    Operands of binary connectives are parenthesized whenever they are
    binary themselves, which reproduces the bracketing conventions of the
    bundled corpora.
    """
    ops = _OPS[style]

    def term(t: Term) -> str:
        return t.name

    def wrap(g: Formula) -> str:
        s = go(g)
        return f"({s})" if isinstance(g, BINARY_TYPES + (Equal,)) or _is_neq(g) else s

    def go(g: Formula) -> str:
        if isinstance(g, PropAtom):
            return g.name
        if isinstance(g, Pred):
            return f"{g.name}({', '.join(term(a) for a in g.args)})"
        if isinstance(g, Equal):
            return f"{term(g.lhs)} {ops[Equal]} {term(g.rhs)}"
        if _is_neq(g):
            eq = g.operand
            return f"{term(eq.lhs)} {ops['neq']} {term(eq.rhs)}"
        if isinstance(g, Not):
            inner = g.operand
            if isinstance(inner, BINARY_TYPES) or isinstance(inner, Equal):
                return f"{ops[Not]}({go(inner)})"
            return f"{ops[Not]}{go(inner)}"
        if isinstance(g, BINARY_TYPES):
            return f"{wrap(g.left)} {ops[type(g)]} {wrap(g.right)}"
        if isinstance(g, QUANTIFIER_TYPES):
            q = ops[type(g)]
            body = g.body
            if isinstance(body, (PropAtom, Pred, Not)) or isinstance(body, QUANTIFIER_TYPES):
                return f"{q}{g.var} {go(body)}"
            return f"{q}{g.var}({go(body)})"
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


def _is_neq(g: Formula) -> bool:
    return isinstance(g, Not) and isinstance(g.operand, Equal)


# --- Structural utilities ---

def desugar(f: Formula) -> Formula:
    """Replace every ``Xor(a, b)`` by ``(a ∨ b) ∧ ¬(a ∧ b)``; idempotent.

    Inequalities are already normalized to ``Not(Equal(...))`` by the
    parser, so exclusive disjunction is the only sugar left to expand.
    """
    if isinstance(f, (PropAtom, Pred, Equal)):
        return f
    if isinstance(f, Not):
        return Not(desugar(f.operand))
    if isinstance(f, Xor):
        left, right = desugar(f.left), desugar(f.right)
        return And(Or(left, right), Not(And(left, right)))
    if isinstance(f, BINARY_TYPES):
        return type(f)(desugar(f.left), desugar(f.right))
    if isinstance(f, QUANTIFIER_TYPES):
        return type(f)(f.var, desugar(f.body))
    raise TypeError(f"not a formula: {f!r}")


def free_variables(f: Formula) -> set[str]:
    """Names of variables occurring free in ``f``."""
    def term_vars(t: Term) -> set[str]:
        return {t.name} if isinstance(t, Var) else set()

    if isinstance(f, PropAtom):
        return set()
    if isinstance(f, Pred):
        out: set[str] = set()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Equal):
        return term_vars(f.lhs) | term_vars(f.rhs)
    if isinstance(f, Not):
        return free_variables(f.operand)
    if isinstance(f, BINARY_TYPES):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, QUANTIFIER_TYPES):
        return free_variables(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.operand)
    elif isinstance(f, BINARY_TYPES):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIER_TYPES):
        yield from subformulas(f.body)


def is_propositional(f: Formula) -> bool:
    """True when the formula contains no predicate, equality, or quantifier."""
    return not any(isinstance(g, (Pred, Equal, Forall, Exists)) for g in subformulas(f))


def prop_letters(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, PropAtom)}


def predicates(f: Formula) -> dict[str, int]:
    """Predicate symbols occurring in ``f``, mapped to their observed arity."""
    out: dict[str, int] = {}
    for g in subformulas(f):
        if isinstance(g, Pred):
            out.setdefault(g.name, len(g.args))
    return out


def constants(f: Formula) -> set[str]:
    out: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Pred):
            out |= {a.name for a in g.args if isinstance(a, Const)}
        elif isinstance(g, Equal):
            out |= {t.name for t in (g.lhs, g.rhs) if isinstance(t, Const)}
    return out


def contains_equality(f: Formula) -> bool:
    return any(isinstance(g, Equal) for g in subformulas(f))


def check_well_formed(f: Formula, sig) -> list[ParseError]:
    """Validate a parsed formula against a signature.

    Returns the full list of problems (empty when well formed): undeclared
    symbols, arity mismatches, free variables, and formulas of the wrong
    logic kind for the signature.
    """
    errors: list[ParseError] = []
    seen: set[tuple[str, str]] = set()

    def report(kind: str, subject: str, message: str) -> None:
        if (kind, subject) not in seen:
            seen.add((kind, subject))
            errors.append(ParseError(kind, 0, message))

    declared_props = {p.symbol for p in sig.props}
    declared_preds = {p.symbol: p.arity for p in sig.preds}
    declared_consts = {c.symbol for c in sig.consts}

    for g in subformulas(f):
        if isinstance(g, PropAtom):
            if sig.kind == "fol":
                report("unknown-symbol", g.name,
                       f"{g.name!r} is not declared (first-order signatures have no proposition letters)")
            elif g.name not in declared_props:
                report("unknown-symbol", g.name, f"proposition letter {g.name!r} is not declared")
        elif isinstance(g, Pred):
            if sig.kind == "prop":
                report("kind-mismatch", g.name,
                       f"predicate {g.name!r} in a propositional exercise")
            elif g.name not in declared_preds:
                report("unknown-symbol", g.name, f"predicate {g.name!r} is not declared")
            elif declared_preds[g.name] != len(g.args):
                report("arity-mismatch", g.name,
                       f"{g.name!r} takes {declared_preds[g.name]} argument(s), got {len(g.args)}")
            for a in g.args:
                if isinstance(a, Const) and a.name not in declared_consts:
                    report("unknown-symbol", a.name, f"constant {a.name!r} is not declared")
        elif isinstance(g, Equal):
            if sig.kind == "prop":
                report("kind-mismatch", "=", "equality in a propositional exercise")
            for t in (g.lhs, g.rhs):
                if isinstance(t, Const) and t.name not in declared_consts:
                    report("unknown-symbol", t.name, f"constant {t.name!r} is not declared")
        elif isinstance(g, QUANTIFIER_TYPES):
            if sig.kind == "prop":
                report("kind-mismatch", "quantifier",
                       "quantifier in a propositional exercise")

    for v in sorted(free_variables(f)):
        report("unbound-variable", v, f"variable {v!r} is not bound by any quantifier")

    return errors
