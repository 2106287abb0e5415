"""Shared exception types.

The CLI maps these onto exit codes: precondition violations exit with 2,
resource-cap overruns with 3.
"""


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class PrecisionError(PreconditionError):
    """A truncated series does not carry enough coefficients to decide."""


class ResourceCapError(RuntimeError):
    """An enumeration would exceed its declared memory/size cap."""


class ParseError(PreconditionError):
    """Malformed input text; carries 1-based line/column of the offence."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
