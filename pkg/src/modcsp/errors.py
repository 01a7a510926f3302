"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ModCspError(Exception):
    """Base class for all library errors."""


class GroupMismatch(ModCspError):
    pass


class LengthMismatch(ModCspError):
    pass


class MultiComponentGroup(ModCspError):
    pass


class InvalidRounds(ModCspError):
    pass


class AutoRoundsUnavailable(ModCspError):
    pass


class InvalidModulus(ModCspError):
    pass


class InvalidTrials(ModCspError):
    pass


class SizeLimit(ModCspError):
    pass


class BasisMismatch(ModCspError):
    pass


class NotPrime(ModCspError):
    pass


class EvenModulus(ModCspError):
    pass


class PrimePowerModulus(ModCspError):
    pass


class InvalidRep(ModCspError):
    pass


class InvalidSystem(ModCspError):
    pass


class NegativeCoefficients(ModCspError):
    pass


class NotUniquePoint(ModCspError):
    pass


class InputError(ModCspError):
    """Malformed or inconsistent input text."""


class ParseError(InputError):
    def __init__(self, line: int, expected: str, detail: str = ""):
        self.line = line
        self.expected = expected
        msg = f"line {line}: expected {expected}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class SemanticError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)
