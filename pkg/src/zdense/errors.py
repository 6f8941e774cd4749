"""Exception hierarchy.

Hypothesis failures map to CLI exit code 2, resource-bound failures to 3.
"""


class ZdenseError(Exception):
    pass


class FieldError(ZdenseError, TypeError):
    """Mixing incompatible scalar fields, or a radical deeper than one step."""


class SingularMatrix(ZdenseError, ZeroDivisionError):
    pass


class UnknownGenerator(ZdenseError, KeyError):
    pass


class HypothesisFailure(ZdenseError):
    """A hypothesis of the construction does not hold for the given input."""


class InvalidDegree(HypothesisFailure, ValueError):
    pass


class InvalidParameter(HypothesisFailure, ValueError):
    pass


class NotHyperbolic(HypothesisFailure):
    pass


class NotLoxodromic(HypothesisFailure):
    pass


class SingularConjugator(HypothesisFailure):
    pass


class IrrationalNormalization(HypothesisFailure):
    pass


class NotIrreducible(HypothesisFailure):
    pass


class NonRationalTrace(HypothesisFailure):
    pass


class ResourceBoundError(ZdenseError):
    """A configured search or iteration bound was exceeded."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class NormSearchExhausted(ResourceBoundError):
    pass


class SaturationDiverged(ResourceBoundError):
    pass
