"""Independent brute-force oracles used to freeze expected test values.

Deliberately separate from the implementations under test: a tiny
truth-table evaluator and validity/entailment checks by exhaustive
enumeration, plus a seeded random formula generator.
"""

from __future__ import annotations

import itertools
import random

from logictutor.formula import (
    And, Formula, Iff, Implies, Not, Or, PropAtom, Xor,
)


def eval_formula(f: Formula, env: dict[str, bool]) -> bool:
    match f:
        case PropAtom(name):
            return env[name]
        case Not(operand):
            return not eval_formula(operand, env)
        case And(left, right):
            return eval_formula(left, env) and eval_formula(right, env)
        case Or(left, right):
            return eval_formula(left, env) or eval_formula(right, env)
        case Xor(left, right):
            return eval_formula(left, env) ^ eval_formula(right, env)
        case Implies(left, right):
            return (not eval_formula(left, env)) or eval_formula(right, env)
        case Iff(left, right):
            return eval_formula(left, env) == eval_formula(right, env)
    raise TypeError(f"not propositional: {f!r}")


def letters_of(f: Formula) -> list[str]:
    match f:
        case PropAtom(name):
            return [name]
        case Not(operand):
            return letters_of(operand)
        case And(a, b) | Or(a, b) | Xor(a, b) | Implies(a, b) | Iff(a, b):
            return sorted(set(letters_of(a)) | set(letters_of(b)))
    raise TypeError(f"not propositional: {f!r}")


def all_assignments(names: list[str]):
    for values in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, values))


def brute_force_valid(f: Formula) -> bool:
    return all(eval_formula(f, env) for env in all_assignments(letters_of(f)))


def brute_force_countermodels(f: Formula) -> list[dict[str, bool]]:
    return [env for env in all_assignments(letters_of(f))
            if not eval_formula(f, env)]


def brute_force_entails(context: list[Formula], claim: Formula) -> bool:
    names = sorted({n for g in [*context, claim] for n in letters_of(g)})
    for env in all_assignments(names):
        if all(eval_formula(g, env) for g in context) and not eval_formula(claim, env):
            return False
    return True


def random_prop_formula(rng: random.Random, letters: list[str],
                        depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        return PropAtom(rng.choice(letters))
    kind = rng.randrange(6)
    if kind == 0:
        return Not(random_prop_formula(rng, letters, depth - 1))
    ctor = (And, Or, Xor, Implies, Iff)[kind - 1]
    return ctor(random_prop_formula(rng, letters, depth - 1),
                random_prop_formula(rng, letters, depth - 1))
