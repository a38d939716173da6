"""Exception types raised by the numerical labs."""

from typing import Optional


class ErgolabError(RuntimeError):
    """Base class for failures inside an experiment computation."""


class SamplingError(ErgolabError):
    """A rejection sampler ran out of attempts."""


class BudgetExceededError(ErgolabError, ValueError):
    """A requested computation exceeds a configured size budget."""


class NumericalFailure(ErgolabError):
    """A solver or quadrature did not meet its accuracy contract."""


class OrbitCollisionError(NumericalFailure):
    """Two distinct reduced words map a point to the same place at float resolution."""

    def __init__(self, message: str, word_a: Optional[str] = None, word_b: Optional[str] = None):
        super().__init__(message)
        self.word_a = word_a
        self.word_b = word_b
