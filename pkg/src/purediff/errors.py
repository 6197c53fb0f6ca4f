"""Exception hierarchy shared by every layer of the package."""


class PureDiffError(Exception):
    """Base class for all package errors."""


class SpecValidationError(PureDiffError, ValueError):
    """An extension spec or document violates a structural invariant."""


class PrecisionExhausted(PureDiffError, ArithmeticError):
    """A series element is zero to its known precision; its value is unknown."""


class UnsupportedForm(PureDiffError, ValueError):
    """An operation was asked for on operands outside its supported forms."""


class NotConcrete(PureDiffError, TypeError):
    """A concrete-field operation was requested on synthetic value data."""


class NoStabilizationWitnessed(PureDiffError):
    """A witness sequence ended before its values became constant."""


class IncompleteKeySet(PureDiffError, ValueError):
    """No polynomial of the supplied set computes the value of a given f."""
