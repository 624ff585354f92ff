"""Exception hierarchy shared by every protocol engine."""


class IndexARQError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(IndexARQError, ValueError):
    """Invalid simulation parameters."""


class DimensionMismatch(IndexARQError, ValueError):
    pass


class SingularMatrixError(IndexARQError, ArithmeticError):
    """No pivot exists in some column during Gaussian elimination."""


class SizeLimitError(IndexARQError, ValueError):
    pass


class InvalidStateError(IndexARQError, RuntimeError):
    """A server step was requested although every receiver is complete."""


class ProtocolViolation(IndexARQError, RuntimeError):
    """A coded packet overlaps a receiver's wanted set in more than one index."""


class MonotonicityViolation(IndexARQError, RuntimeError):
    """Feedback tried to turn a known packet back into a wanted one."""


class FieldExhausted(IndexARQError, RuntimeError):
    """More than 255 distinct evaluation points were requested."""


class MaxRoundsExceeded(IndexARQError, RuntimeError):
    def __init__(self, rounds):
        super().__init__(f"trial aborted after {rounds} transmissions")
        self.rounds = rounds


class IntegrityError(IndexARQError, AssertionError):
    """A receiver's reconstructed sequence differs from the server's."""
