"""Simplicity grading of natural-language answers.

A logically correct deformalization can still be a clumsy word-for-word
reading of the formula.  As a proxy for naturalness we relate the length of
the hidden template solution to the length of the submitted text and squash
the ratio through a sigmoid onto a 0-10 scale:

    value = 10 * sigmoid(10 * (template_length / input_length - 0.7))

Lengths are counted in Unicode code points after trimming and collapsing
whitespace runs, so spacing quirks do not affect the grade.  The scale is
cut into three feedback bands: value <= 5 is LOW, 5 < value < 8 is MID,
and value >= 8 is HIGH.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

LOW = "low"
MID = "mid"
HIGH = "high"

_WHITESPACE_RUN = re.compile(r"\s+")


def normalize_text(text: str) -> str:
    """Trim and collapse each internal whitespace run to a single space."""
    return _WHITESPACE_RUN.sub(" ", text.strip())


def normalized_length(text: str) -> int:
    """Code-point count after trimming and collapsing internal whitespace."""
    return len(normalize_text(text))


def score_band(value: float) -> str:
    if not 0.0 < value < 10.0:
        raise ValueError(f"simplicity value out of range: {value}")
    if value <= 5.0:
        return LOW
    if value < 8.0:
        return MID
    return HIGH


@dataclass(frozen=True)
class SimplicityScore:
    value: float
    band: str
    template_length: int
    input_length: int

    @property
    def display_value(self) -> float:
        """Rounded for presentation; band decisions use the exact value."""
        return round(self.value, 2)


def simplicity_score(template: str, user_input: str) -> SimplicityScore:
    """Grade ``user_input`` against the template solution.

    Only called for logically correct answers, so an empty input signals a
    pipeline bug and raises.
    """
    template_length = normalized_length(template)
    input_length = normalized_length(user_input)
    if input_length < 1:
        raise ValueError("cannot grade an empty answer")
    ratio = template_length / input_length
    value = 10.0 / (1.0 + math.exp(-10.0 * (ratio - 0.7)))
    if value >= 10.0:  # sigmoid underflow for huge ratios; stay inside (0, 10)
        value = math.nextafter(10.0, 0.0)
    return SimplicityScore(
        value=value,
        band=score_band(value),
        template_length=template_length,
        input_length=input_length,
    )
