"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DtMotiveError(Exception):
    """Base class for all package errors."""


class UnreducedEquivariantPower(DtMotiveError, ArithmeticError):
    """A product would create Mt*Mt2 or Mt2*Mt2, which the ring does not model."""


class UnsupportedAdams(DtMotiveError, ValueError):
    pass


class NonIntegralSigma(DtMotiveError, ArithmeticError):
    pass


class NonIntegralExp(DtMotiveError, ArithmeticError):
    pass


class FractionalExponent(DtMotiveError, ValueError):
    pass


class NonExactDivision(DtMotiveError, ArithmeticError):
    pass


class TwistMismatch(DtMotiveError, ValueError):
    pass


class UnsupportedCoefficient(DtMotiveError, ValueError):
    pass


class ParseError(DtMotiveError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DecompositionFailure(DtMotiveError, ValueError):
    pass


class BadPrime(DtMotiveError, ValueError):
    pass


class NotLinear(DtMotiveError, ValueError):
    pass


class NonIntegralFit(DtMotiveError, ArithmeticError):
    pass


class MissingEntry(DtMotiveError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class AssumptionViolated(DtMotiveError, ValueError):
    pass


class Mismatch(DtMotiveError, AssertionError):
    """A verification failed; ``details`` carries the diagnostic payload."""

    def __init__(self, message: str, **details):
        self.details = details
        super().__init__(message)
