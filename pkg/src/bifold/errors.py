"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI and the
HTTP service can report failures uniformly.
"""


class BifoldError(Exception):
    """Base class for all package errors."""

    code = "BIFOLD_ERROR"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DataError(BifoldError):
    """Invalid input data: parse failures, schema violations, bad labels."""

    code = "DATA_ERROR"


class PreconditionError(BifoldError):
    """A method was applied to data that violates its preconditions."""

    code = "PRECONDITION_ERROR"


class NumericError(BifoldError):
    """A numerical routine failed (eigensolver, non-finite values)."""

    code = "NUMERIC_ERROR"


class NoCommonObservations(PreconditionError):
    """A pair of objects shares no commonly-observed positions."""

    code = "NO_COMMON_OBSERVATIONS"
