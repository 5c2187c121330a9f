"""Exception hierarchy shared by every module."""


class CircuitCodeError(Exception):
    """Base class for all errors raised by this package."""


class ElementOutOfRange(CircuitCodeError):
    pass


class NotClosed(CircuitCodeError):
    pass


class InvalidSequence(CircuitCodeError):
    """Sequence is too short, odd, or contains non-positive entries."""


class WidthMismatch(CircuitCodeError):
    pass


class IndexOutOfRange(CircuitCodeError):
    pass


class LengthTooShort(CircuitCodeError):
    pass


class TooShort(CircuitCodeError):
    pass


class OddLength(CircuitCodeError):
    pass


class VerificationError(CircuitCodeError):
    """A spread check that must hold did not."""


class InputNotVerified(VerificationError):
    pass


class PostVerificationFailed(VerificationError):
    pass


class ParseError(CircuitCodeError):
    pass


class LengthMismatch(ParseError):
    pass


class NoEntry(CircuitCodeError, KeyError):
    pass


class RangeTooSmall(CircuitCodeError):
    pass


class DomainError(CircuitCodeError, ValueError):
    pass


class InconsistentBound(CircuitCodeError):
    """A derived lower bound contradicts a known exact value."""
