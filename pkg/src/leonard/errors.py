"""Exception hierarchy shared by every layer of the package."""


class LeonardError(Exception):
    """Base class for all package errors."""


# field layer
class CompositeP(LeonardError, ValueError):
    pass


class ReducibleModulus(LeonardError, ValueError):
    pass


class NonMonicModulus(LeonardError, ValueError):
    pass


class CtxMismatch(LeonardError, TypeError):
    pass


class DivisionByZero(LeonardError, ZeroDivisionError):
    pass


class ParseError(LeonardError, ValueError):
    pass


class OutOfRange(ParseError):
    pass


# matrices
class OrderMismatch(LeonardError, ValueError):
    pass


class Singular(LeonardError, ArithmeticError):
    pass


class RepeatedEigenvalue(LeonardError, ValueError):
    pass


class NotAnEigenvalue(LeonardError, ValueError):
    pass


# recurrences
class NotRecurrent(LeonardError, ValueError):
    pass


class ZeroDenominator(LeonardError, ZeroDivisionError):
    pass


class InconsistentFit(LeonardError, ValueError):
    pass


class NoQSupplied(LeonardError, ValueError):
    pass


class VerificationFailed(LeonardError, ValueError):
    pass


# parameter arrays
class StructuralError(LeonardError, ValueError):
    pass


class PostValidationFailed(LeonardError, RuntimeError):
    pass


class PA2Failure(LeonardError, ValueError):
    pass


class PrereqFailure(LeonardError, ValueError):
    pass


# realizations
class InvalidParameterArray(LeonardError, ValueError):
    pass


class CrossCheckFailed(LeonardError, RuntimeError):
    pass


class PatternViolation(LeonardError, ValueError):
    pass


class NotLeonard(LeonardError, ValueError):
    pass


class TDNonzero(LeonardError, RuntimeError):
    pass


class PreconditionD(LeonardError, ValueError):
    pass


class MethodPrecondition(LeonardError, ValueError):
    pass


# families
class ConstraintViolated(LeonardError, ValueError):
    pass


class Inadmissible(LeonardError, ValueError):
    pass


class ExhaustedSearch(LeonardError, RuntimeError):
    pass
