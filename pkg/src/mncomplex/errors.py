"""Exception types shared across the package.

CLI exit codes: 0 ok, 2 config error, 3 budget exceeded, 4 I/O error.
"""


class MncomplexError(Exception):
    """Base class for package errors."""


class ConfigError(MncomplexError):
    """Invalid configuration, flags, or argument values."""

    exit_code = 2


class BudgetExceededError(MncomplexError):
    """An exhaustive enumeration would exceed its configured budget."""

    exit_code = 3

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class BoundInapplicableError(MncomplexError):
    """A tail bound was requested on the wrong side of the mean."""

    exit_code = 2


class SupportUndecidedError(MncomplexError):
    """The complex was not built deep enough to certify the support class."""

    exit_code = 2
