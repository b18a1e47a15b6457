"""Exception hierarchy.

Two families matter to callers.  :class:`DomainError` covers bad or
oversized input (empty varieties, budgets, malformed files).
:class:`CorrectnessAlarm` means an exact identity that must hold did not;
it points at a bug or a wrong convention and is never a user mistake.
"""


class QuiverHodgeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(QuiverHodgeError):
    pass


class CorrectnessAlarm(QuiverHodgeError):
    pass


# -- domain errors ---------------------------------------------------------

class BudgetExceeded(DomainError):
    pass


class EmptyVariety(DomainError):
    pass


class ShapeMismatch(DomainError, ValueError):
    pass


class CapMismatch(DomainError, ValueError):
    pass


class InvalidPartition(DomainError, ValueError):
    pass


class ParseError(DomainError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class IndexOutOfRange(ParseError):
    pass


class InsufficientPoints(DomainError, ValueError):
    pass


class NonUnitConstantTerm(DomainError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(DomainError, ValueError):
    pass


class ConstantTermNotOne(DomainError, ValueError):
    pass


class EvenQ(DomainError, ValueError):
    pass


class NotPrimePower(DomainError, ValueError):
    pass


# -- correctness alarms ----------------------------------------------------

class NotDivisible(CorrectnessAlarm, ArithmeticError):
    pass


class NonPolynomialCoefficient(CorrectnessAlarm):
    pass


class NonPolynomialResult(CorrectnessAlarm):
    pass


class NonIntegralCount(CorrectnessAlarm):
    pass


class NonIntegral(CorrectnessAlarm):
    pass


class NonIntegralInterpolant(CorrectnessAlarm):
    pass


class OracleMismatch(CorrectnessAlarm):
    pass
