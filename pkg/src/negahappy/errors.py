"""Exception hierarchy shared by all modules."""


class NegahappyError(ValueError):
    """Base class for domain errors (CLI exit status 1)."""


class InvalidBase(NegahappyError):
    pass


class DigitRangeError(NegahappyError):
    pass


class NegativeResultError(NegahappyError):
    """An operation produced a negative value where a nonnegative numeral is required."""


class PreconditionError(NegahappyError):
    pass


class TooLarge(NegahappyError):
    """A numeral cannot be materialized within the configured budget."""


class NotFound(NegahappyError):
    """A bounded search ended without a result (CLI exit status 2)."""
