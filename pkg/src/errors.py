# -*- coding: utf-8 -*-
"""
SuccessiveShifts - Error Types Module
License: MIT License

Exception hierarchy shared by the numerical modules. Library code raises these;
only the CLI layer turns them into exit codes (InputError -> 2, anything
else -> 1).
"""


class SuccessiveShiftsError(Exception):
    """Base class for every error raised by this package."""
    exit_code = 1


class InputError(SuccessiveShiftsError):
    """Invalid user input: bad files, bad configuration, out-of-range indices."""
    exit_code = 2


class DimensionError(InputError):
    """Matrix or vector dimensions do not agree."""


class BoundValidationError(InputError):
    """The spectral-norm cap rho is smaller than the norm of a designed shift."""


class FeatureHistoryError(InputError):
    """A feature vector was requested before two past iterations exist."""


class NumericalError(SuccessiveShiftsError):
    """A computation produced a non-finite or otherwise unusable result."""
    exit_code = 1


class SingularBlockError(NumericalError):
    """
    The normal system of a block subproblem is numerically singular. Carries
    the trace of the unregularized normal matrix and its size so the caller
    can choose a retry ridge.
    """

    def __init__(self, message: str, trace: float = 0.0, e_count: int = 1):
        super().__init__(message)
        self.trace = trace
        self.e_count = e_count


class ConvergenceError(NumericalError):
    """An iterative method did not converge."""


class EstimatorDivergenceError(NumericalError):
    """An online update produced non-finite coefficients."""
