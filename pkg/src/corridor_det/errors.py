"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CorridorDetError(Exception):
    """Base class for all library errors."""


class ParseError(CorridorDetError, ValueError):
    pass


class SizeCap(CorridorDetError):
    pass


class NotDivisible(CorridorDetError, ArithmeticError):
    pass


class DivisionByZero(CorridorDetError, ZeroDivisionError):
    pass


class UnboundVariable(CorridorDetError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class Unreachable(CorridorDetError):
    pass


class ExplosionCap(CorridorDetError):
    pass


class InvalidGraph(CorridorDetError, ValueError):
    """Structural invariant of a labeled digraph is broken."""


class AxiomViolation(CorridorDetError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"graph violates the walking-cat axioms: {report.summary()}")


class NotACorridor(CorridorDetError):
    def __init__(self, condition: int, witness: tuple, message: str = ""):
        self.condition = condition
        self.witness = witness
        text = f"condition {condition} fails at {witness!r}"
        if message:
            text += f": {message}"
        super().__init__(text)


class NotNested(CorridorDetError):
    pass


class ModeMismatch(CorridorDetError):
    pass


class BadArity(CorridorDetError, ValueError):
    pass


class IsChamber(CorridorDetError, ValueError):
    pass


class OddCount(CorridorDetError):
    pass


class NotAcyclic(CorridorDetError):
    pass


class Disconnected(CorridorDetError):
    pass


class CorridorLabelMismatch(CorridorDetError):
    """A pair of distinct entrances is not labeled with the corridor's label."""


class InconsistentMultiplicity(CorridorDetError):
    """Face multiplicity depends on the chosen hyperplane."""
