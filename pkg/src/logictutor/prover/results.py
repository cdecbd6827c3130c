"""Result and budget types shared by the proof procedures."""

from __future__ import annotations

from dataclasses import dataclass


class ContractViolation(ValueError):
    """A prover was called outside its stated precondition."""


@dataclass(frozen=True)
class ProofBudget:
    """Resource bounds for a single proof attempt.

    ``wall_ms`` caps elapsed time, ``max_instantiations`` caps universal
    instantiations per tableau branch (searched with an iterative-deepening
    schedule 1, 2, 4, ...), and ``max_depth`` caps nested case splits.
    """

    wall_ms: int = 2000
    max_instantiations: int = 64
    max_depth: int = 40

    def __post_init__(self) -> None:
        if self.wall_ms <= 0 or self.max_instantiations <= 0 or self.max_depth <= 0:
            raise ContractViolation("proof budget fields must be strictly positive")

    def split(self) -> "ProofBudget":
        """Half the wall clock, for running two directions under one budget."""
        return ProofBudget(max(1, self.wall_ms // 2),
                           self.max_instantiations, self.max_depth)


# Propositional results

@dataclass(frozen=True)
class Valid:
    pass


@dataclass(frozen=True, eq=True)
class Countermodel:
    assignment: tuple[tuple[str, bool], ...]

    @classmethod
    def from_dict(cls, assignment: dict[str, bool]) -> "Countermodel":
        return cls(tuple(sorted(assignment.items())))

    def as_dict(self) -> dict[str, bool]:
        return dict(self.assignment)


PropResult = Valid | Countermodel


# First-order results

@dataclass(frozen=True)
class Proved:
    pass


@dataclass(frozen=True)
class Unknown:
    reason: str  # "budget-exhausted" | "timeout"


@dataclass(frozen=True)
class FiniteModel:
    """A small first-order structure, used to refute monadic formulas."""

    size: int
    predicates: tuple[tuple[str, tuple[bool, ...]], ...]
    constants: tuple[tuple[str, int], ...]

    def describe(self) -> str:
        elements = [f"e{i + 1}" for i in range(self.size)]
        parts = [f"domain {{{', '.join(elements)}}}"]
        for name, extension in self.predicates:
            members = ", ".join(e for e, inside in zip(elements, extension) if inside)
            parts.append(f"{name} = {{{members}}}")
        for name, idx in self.constants:
            parts.append(f"{name} = e{idx + 1}")
        return "; ".join(parts)


@dataclass(frozen=True)
class RefutedBySmallModel:
    model: FiniteModel


FolResult = Proved | Unknown | RefutedBySmallModel


def is_proved(result: PropResult | FolResult) -> bool:
    return isinstance(result, (Valid, Proved))


def is_refuted(result: PropResult | FolResult) -> bool:
    return isinstance(result, (Countermodel, RefutedBySmallModel))


def is_unknown(result: PropResult | FolResult) -> bool:
    return isinstance(result, Unknown)


@dataclass(frozen=True)
class DirectionalEquivalence:
    """Proof outcomes for answer→expected (forward) and expected→answer (backward)."""

    forward: PropResult | FolResult
    backward: PropResult | FolResult


EQUIVALENT = "equivalent"
SUFFICIENT_NOT_NECESSARY = "sufficient-not-necessary"
NECESSARY_NOT_SUFFICIENT = "necessary-not-sufficient"
NEITHER = "neither"
PARTIALLY_UNVERIFIED = "partially-unverified"


@dataclass(frozen=True)
class Verdict:
    kind: str
    unverified_directions: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == PARTIALLY_UNVERIFIED and not self.unverified_directions:
            raise ContractViolation("partially-unverified requires the unknown directions")
