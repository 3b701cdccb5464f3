"""Exception types raised by the library."""


class MooreError(Exception):
    """Base class for all library errors."""


class InvalidIntervalError(MooreError, ValueError):
    """Endpoints do not describe a nonempty set of reals."""


class EmptyIntervalError(MooreError, ValueError):
    """A query needs a nonempty interval."""


class ParseError(MooreError, ValueError):
    """Malformed interval literal, number, format spec or expression."""


class ZeroDenominatorError(ParseError, ZeroDivisionError):
    """A rational literal or constructor has a zero denominator."""


class RaggedRowsError(ParseError):
    """Matrix rows of different lengths."""


class NoCommonKindError(MooreError, TypeError):
    """Neither endpoint kind converts exactly into the other."""


class InvalidExtendedFormError(MooreError, ArithmeticError):
    """An endpoint operation hit inf - inf, 0 * inf, inf / inf or 0 / 0."""


class NoActiveGuardError(MooreError, RuntimeError):
    """A directed endpoint operation ran outside a rounding guard."""


class DimensionMismatchError(MooreError, ValueError):
    """Box or matrix shapes do not agree."""
