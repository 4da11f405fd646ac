"""Exception types shared across the package."""


class SpecgapError(Exception):
    """Base class for all package errors."""


class InputError(SpecgapError, ValueError):
    """Malformed or out-of-contract input (unknown labels, bad ranges)."""


class SizeError(InputError):
    """A requested dense object would exceed the supported dimension cap."""


class ConstructionError(SpecgapError):
    """A builder's validation gate failed.

    ``inequality`` names the violated constraint in the builder's own
    parameter language, e.g. ``"|lam| > x^3"``.
    """

    def __init__(self, message, inequality=None):
        super().__init__(message)
        self.inequality = inequality


class SearchError(SpecgapError):
    """A bounded search exhausted its budget.

    Carries the examined-candidate trace; never a claim of nonexistence.
    """

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = tuple(trace)


class NumericalError(SpecgapError):
    """A numerical kernel failed (non-convergence, degenerate data)."""

    def __init__(self, message, matrix_hash=None):
        super().__init__(message)
        self.matrix_hash = matrix_hash


class DegenerateConfigurationError(NumericalError):
    """A transversality-style precondition is numerically violated."""


class SamplingError(SpecgapError):
    """A randomized sweep produced too few usable samples."""
