"""Exception hierarchy shared across the package."""


class ForetelError(Exception):
    """Base class for all package-specific errors."""


class InvalidSplitError(ForetelError):
    """Requested holdout size is outside [1, len(series) - 1]."""


class GapError(ForetelError):
    """A gap was found while regularizing with gap_policy='error'."""


class GridAmbiguityError(ForetelError):
    """Two source points snapped to the same grid slot during regularization."""


class InsufficientDataError(ForetelError):
    """Series too short for the requested model or operation."""


class SingularSystemError(ForetelError):
    """Normal equations are singular; retry with ridge_lambda > 0."""


class DegenerateTargetError(ForetelError):
    """Target values have zero variance; R-squared is undefined."""


class ParseError(ForetelError):
    """A dataset file could not be parsed."""


class UsageError(ForetelError):
    """Invalid command-line flags or configuration values."""
