"""Exception types raised across the package."""


class VacprobeError(Exception):
    """Base class for all package errors."""


class InvalidInputError(VacprobeError, ValueError):
    """Argument outside the domain of an operation."""


class NumericError(VacprobeError, ArithmeticError):
    """A numerical routine did not reach its tolerance.

    ``estimate`` carries the best value obtained, ``diagnostics`` a dict
    of whatever the failing routine knew about the failure.
    """

    def __init__(self, message, estimate=None, diagnostics=None):
        super().__init__(message)
        self.estimate = estimate
        self.diagnostics = diagnostics or {}


class PerturbativeRegimeError(NumericError):
    """Second-order density matrix is not positive: couplings too large."""
