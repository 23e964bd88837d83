"""Exception taxonomy shared across the package.

The CLI maps ConfigurationError to exit code 1 and DataError (including
its subclasses) to exit code 2.
"""


class AdsageError(Exception):
    """Base class for all package errors."""


class ConfigurationError(AdsageError):
    """Invalid configuration: bad shapes, missing files, mismatched checkpoints."""


class DataError(AdsageError):
    """Invalid or degenerate data encountered while parsing, training or scoring."""


class DegenerateInputError(DataError):
    """Input on which an operation is mathematically undefined (e.g. zero-norm cosine)."""


class UndefinedMetricError(DataError):
    """A metric that cannot be computed, e.g. recall when no day has malicious users."""


class NumericalError(DataError):
    """Non-finite values encountered during training."""
