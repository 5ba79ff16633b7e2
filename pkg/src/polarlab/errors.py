"""Exception hierarchy shared by all polarlab modules.

Exit-code mapping used by the CLI: InputError -> 2, NumericError -> 1,
SuiteFailure -> 3.
"""


class PolarLabError(Exception):
    """Base class for all polarlab errors."""

    exit_code = 1


class InputError(PolarLabError):
    """Malformed or out-of-contract input (bad spec, bad parameters)."""

    exit_code = 2

    def __init__(self, message, violations=None):
        super().__init__(message)
        # list of {"path": ..., "message": ...} entries for schema errors
        self.violations = violations or []


class NumericError(PolarLabError):
    """A computation failed to produce a trustworthy value."""

    exit_code = 1


class DomainError(NumericError):
    """Evaluation requested outside the mathematical domain of an operation
    (e.g. polarity center on or outside the support boundary)."""


class SuiteFailure(PolarLabError):
    """A verification suite reported failing cases."""

    exit_code = 3
