"""First-order proof search: free-variable analytic tableau.

Validity of a closed formula is established by refuting its negation.  The
negation is brought into negation normal form and expanded depth-first;
universal formulas are instantiated with fresh free variables and re-queued,
existential ones with Skolem terms over the branch's free variables, and
branches close by unifying complementary literals (the unifier applies
globally, with backtracking over closure choices).  Completeness in the
limit comes from iterative deepening on the number of universal
instantiations allowed per branch.

Equality has no built-in rule; when a query mentions equality, the caller
conjoins congruence axioms (see :func:`equality_axioms`) with the negated
query before searching.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

from ..formula import (
    And, Const, Equal, Exists, Forall, Formula, Iff, Implies, Not, Or, Pred,
    PropAtom, Var, Xor, contains_equality, desugar, free_variables,
    predicates,
)
from .results import ContractViolation, FolResult, ProofBudget, Proved, Unknown


@dataclass(frozen=True)
class SkTerm:
    """Skolem term introduced for an existential quantifier."""

    name: str
    args: tuple


# --- Negation normal form ---

def nnf(f: Formula, positive: bool = True) -> Formula:
    if isinstance(f, (PropAtom, Pred, Equal)):
        return f if positive else Not(f)
    if isinstance(f, Not):
        return nnf(f.operand, not positive)
    if isinstance(f, And):
        ctor = And if positive else Or
        return ctor(nnf(f.left, positive), nnf(f.right, positive))
    if isinstance(f, Or):
        ctor = Or if positive else And
        return ctor(nnf(f.left, positive), nnf(f.right, positive))
    if isinstance(f, Implies):
        if positive:
            return Or(nnf(f.left, False), nnf(f.right, True))
        return And(nnf(f.left, True), nnf(f.right, False))
    if isinstance(f, Iff):
        if positive:
            return Or(And(nnf(f.left, True), nnf(f.right, True)),
                      And(nnf(f.left, False), nnf(f.right, False)))
        return Or(And(nnf(f.left, True), nnf(f.right, False)),
                  And(nnf(f.left, False), nnf(f.right, True)))
    if isinstance(f, Forall):
        ctor = Forall if positive else Exists
        return ctor(f.var, nnf(f.body, positive))
    if isinstance(f, Exists):
        ctor = Exists if positive else Forall
        return ctor(f.var, nnf(f.body, positive))
    if isinstance(f, Xor):
        raise ContractViolation("desugar before normalizing")
    raise TypeError(f"not a formula: {f!r}")


# --- Substitution (quantifier instantiation) ---

def _subst_term(t, var: str, value):
    if isinstance(t, Var):
        return value if t.name == var else t
    if isinstance(t, SkTerm):
        return SkTerm(t.name, tuple(_subst_term(a, var, value) for a in t.args))
    return t


def substitute(f: Formula, var: str, value) -> Formula:
    if isinstance(f, PropAtom):
        return f
    if isinstance(f, Pred):
        return Pred(f.name, tuple(_subst_term(a, var, value) for a in f.args))
    if isinstance(f, Equal):
        return Equal(_subst_term(f.lhs, var, value), _subst_term(f.rhs, var, value))
    if isinstance(f, Not):
        return Not(substitute(f.operand, var, value))
    if isinstance(f, (And, Or)):
        return type(f)(substitute(f.left, var, value), substitute(f.right, var, value))
    if isinstance(f, (Forall, Exists)):
        if f.var == var:  # shadowed
            return f
        return type(f)(f.var, substitute(f.body, var, value))
    raise TypeError(f"not an NNF formula: {f!r}")


# --- Unification ---

class Bindings:
    def __init__(self) -> None:
        self.map: dict[str, object] = {}
        self.trail: list[str] = []

    def walk(self, t):
        while isinstance(t, Var) and t.name in self.map:
            t = self.map[t.name]
        return t

    def bind(self, name: str, t) -> None:
        self.map[name] = t
        self.trail.append(name)

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            del self.map[self.trail.pop()]

    def occurs(self, name: str, t) -> bool:
        t = self.walk(t)
        if isinstance(t, Var):
            return t.name == name
        if isinstance(t, SkTerm):
            return any(self.occurs(name, a) for a in t.args)
        return False

    def unify(self, a, b) -> bool:
        a, b = self.walk(a), self.walk(b)
        if isinstance(a, Var) and isinstance(b, Var) and a.name == b.name:
            return True
        if isinstance(a, Var):
            if self.occurs(a.name, b):
                return False
            self.bind(a.name, b)
            return True
        if isinstance(b, Var):
            if self.occurs(b.name, a):
                return False
            self.bind(b.name, a)
            return True
        if isinstance(a, Const) and isinstance(b, Const):
            return a.name == b.name
        if isinstance(a, SkTerm) and isinstance(b, SkTerm):
            return (a.name == b.name
                    and all(self.unify(x, y) for x, y in zip(a.args, b.args)))
        return False


def _unify_atoms(a: Formula, b: Formula, bindings: Bindings) -> bool:
    if isinstance(a, PropAtom) and isinstance(b, PropAtom):
        return a.name == b.name
    if isinstance(a, Pred) and isinstance(b, Pred):
        return (a.name == b.name and len(a.args) == len(b.args)
                and all(bindings.unify(x, y) for x, y in zip(a.args, b.args)))
    if isinstance(a, Equal) and isinstance(b, Equal):
        return bindings.unify(a.lhs, b.lhs) and bindings.unify(a.rhs, b.rhs)
    return False


def _complementary(lit: Formula, other: Formula, bindings: Bindings) -> bool:
    if isinstance(lit, Not) and not isinstance(other, Not):
        return _unify_atoms(lit.operand, other, bindings)
    if isinstance(other, Not) and not isinstance(lit, Not):
        return _unify_atoms(lit, other.operand, bindings)
    return False


# --- Search ---

class _DeadlineExceeded(Exception):
    pass


class _SearchState:
    def __init__(self, deadline: float, max_depth: int):
        self.bindings = Bindings()
        self.deadline = deadline
        self.max_depth = max_depth
        self.counter = itertools.count(1)

    def fresh_var(self) -> Var:
        return Var(f"?v{next(self.counter)}")

    def fresh_skolem(self, args: tuple) -> SkTerm:
        return SkTerm(f"?sk{next(self.counter)}", args)


def _search(f, worklist, literals, free_vars, gamma_left, depth, st):
    """Yield once for every way of closing all branches below this node."""
    if time.monotonic() > st.deadline:
        raise _DeadlineExceeded
    if isinstance(f, And):
        yield from _search(f.left, [f.right] + worklist, literals,
                           free_vars, gamma_left, depth, st)
    elif isinstance(f, Or):
        if depth >= st.max_depth:
            return
        for _ in _search(f.left, worklist, literals, free_vars,
                         gamma_left, depth + 1, st):
            yield from _search(f.right, worklist, literals, free_vars,
                               gamma_left, depth + 1, st)
    elif isinstance(f, Forall):
        if gamma_left <= 0:
            return
        v = st.fresh_var()
        body = substitute(f.body, f.var, v)
        yield from _search(body, worklist + [f], literals,
                           free_vars + (v,), gamma_left - 1, depth, st)
    elif isinstance(f, Exists):
        sk = st.fresh_skolem(free_vars)
        yield from _search(substitute(f.body, f.var, sk), worklist, literals,
                           free_vars, gamma_left, depth, st)
    else:  # literal
        for other in literals:
            mark = st.bindings.mark()
            if _complementary(f, other, st.bindings):
                yield None
            st.bindings.undo(mark)
        if worklist:
            yield from _search(worklist[0], worklist[1:], literals + [f],
                               free_vars, gamma_left, depth, st)


def refute(target: Formula, budget: ProofBudget) -> str:
    """Try to close a tableau for ``target`` (an NNF formula).

    Returns ``"closed"``, ``"budget-exhausted"``, or ``"timeout"``.
    """
    deadline = time.monotonic() + budget.wall_ms / 1000.0
    limit = 1
    while True:
        st = _SearchState(deadline, budget.max_depth)
        try:
            for _ in _search(target, [], [], (), limit, 0, st):
                return "closed"
        except (_DeadlineExceeded, RecursionError):
            return "timeout"
        if limit >= budget.max_instantiations:
            return "budget-exhausted"
        limit = min(limit * 2, budget.max_instantiations)


# --- Equality handling ---

def equality_axioms(pred_arities: dict[str, int]) -> list[Formula]:
    """Reflexivity, symmetry, transitivity, and one congruence axiom per predicate."""
    x, y, z = Var("x"), Var("y"), Var("z")
    axioms: list[Formula] = [
        Forall("x", Equal(x, x)),
        Forall("x", Forall("y", Implies(Equal(x, y), Equal(y, x)))),
        Forall("x", Forall("y", Forall("z", Implies(
            And(Equal(x, y), Equal(y, z)), Equal(x, z))))),
    ]
    for name, arity in sorted(pred_arities.items()):
        xs = [Var(f"x{i + 1}") for i in range(arity)]
        ys = [Var(f"y{i + 1}") for i in range(arity)]
        same = Equal(xs[0], ys[0])
        for xi, yi in zip(xs[1:], ys[1:]):
            same = And(same, Equal(xi, yi))
        body = Implies(And(same, Pred(name, tuple(xs))), Pred(name, tuple(ys)))
        quantified: Formula = body
        for v in reversed([t.name for t in xs + ys]):
            quantified = Forall(v, quantified)
        axioms.append(quantified)
    return axioms


def tableau_validity(f: Formula, budget: ProofBudget) -> FolResult:
    """Semi-decide validity of a closed first-order formula by tableau.

    ``Proved`` is sound; failure to close within the budget yields
    ``Unknown``.  Queries mentioning equality are proved modulo the
    congruence axioms for the predicates they use.
    """
    f = desugar(f)
    if free_variables(f):
        raise ContractViolation("tableau_validity requires a closed formula")
    target = nnf(Not(f))
    if contains_equality(f):
        for axiom in equality_axioms(predicates(f)):
            target = And(target, nnf(axiom))
    outcome = refute(target, budget)
    if outcome == "closed":
        return Proved()
    return Unknown(outcome)
