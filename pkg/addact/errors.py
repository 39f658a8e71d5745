"""Domain errors for addact.

Every error raised on bad input derives from ``AddactError`` (itself a
``ValueError``), so callers can catch the whole family at once and the CLI
can report the class name.
"""


class AddactError(ValueError):
    """Base class for all addact domain errors."""


# ---------------------------------------------------------------------------
# Polynomial layer
# ---------------------------------------------------------------------------

class PolySyntaxError(AddactError):
    """Malformed polynomial expression."""


class UnknownVariable(AddactError):
    pass


class NegativeExponent(AddactError):
    pass


class VariableMismatch(AddactError):
    """Operands live over different ambient variable lists."""


class IndexOutOfRange(AddactError, IndexError):
    pass


class ZeroPolynomial(AddactError):
    pass


# ---------------------------------------------------------------------------
# Algebra layer
# ---------------------------------------------------------------------------

class NonzeroConstantTerm(AddactError):
    """A relation has a nonzero constant term, so the ideal is not inside m."""


class TruncationCapExceeded(AddactError):
    """Truncated quotient dimensions were still growing at the cap.

    This is what a non m-primary ideal such as (xy) looks like: the
    quotient is infinite-dimensional.
    """


class DimensionMismatch(AddactError):
    pass


class NotInMaximalIdeal(AddactError):
    pass


class NotAnIdeal(AddactError):
    pass


class QuotientIsZero(AddactError):
    pass


class NotNilpotent(AddactError):
    pass


class UnitPartNotOne(AddactError):
    pass


class InternalInvariantViolation(AddactError):
    """A mathematical invariant the code relies on did not hold."""


# ---------------------------------------------------------------------------
# H-pair layer
# ---------------------------------------------------------------------------

class WrongCodimension(AddactError):
    pass


class DoesNotGenerate(AddactError):
    pass


class ComplementInU(AddactError):
    pass


class IdealNotInsideU(AddactError):
    pass


class ZeroIdeal(AddactError):
    pass


class NondegenerateInput(AddactError):
    pass


class PassLimitExceeded(AddactError):
    pass


class InvalidRange(AddactError):
    pass


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------

class PresentationFileError(AddactError):
    """A presentation file is missing a section or has an unknown key."""
