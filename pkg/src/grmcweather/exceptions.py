"""
grmcweather.exceptions

This module contains the set of grmcweather's exceptions.
"""


class GrmcError(Exception):
    """General grmcweather error occurred."""


class DataError(GrmcError):
    """Input data or parameters failed validation."""


class GraphError(DataError):
    """A graph could not be built from the given input."""


class MaskError(DataError):
    """A holdout mask could not be generated or applied."""


class InsufficientDataError(GrmcError):
    """Not enough usable data for the requested operation."""

    def __init__(self, message, found=None):
        super(InsufficientDataError, self).__init__(message)
        self.found = found


class SolverError(GrmcError):
    """A completion solver failed."""


class SingularSubproblemError(SolverError):
    """An unregularized factor subproblem is singular."""

    def __init__(self, message, rows=()):
        super(SingularSubproblemError, self).__init__(message)
        self.rows = tuple(rows)


class EvaluationError(GrmcError):
    """A completion could not be scored."""
