"""Shared exception types for the synthesis engines and CLI."""

from __future__ import annotations


class SynthesisError(Exception):
    """Base class for all decision/realization failures."""


class NotPassive(SynthesisError):
    """The impedance is not positive-real (e.g. a negative coefficient)."""


class NotCoprime(SynthesisError):
    """Numerator and denominator share a root (R0 vanished)."""


class NotRealizable(SynthesisError):
    """The impedance is outside the realizability set named in `which`."""

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        super().__init__(f"not realizable in {which}" + (f": {detail}" if detail else ""))


class Undecided(SynthesisError):
    """The search hit an algebraic corner it could not resolve exactly
    within the configured precision budget."""


class InvalidElementValue(ValueError):
    """An element value violates its class sign condition."""
