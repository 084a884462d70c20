"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates a documented precondition."""


class InvalidMatrix(ValueError):
    """A matrix argument is malformed (wrong shape, non-finite, asymmetric)."""


class NotPSD(ValueError):
    """A matrix required to be positive semidefinite is not."""


class RankDeficient(ValueError):
    """A design or basis matrix has numerical rank below its column count."""


class UnderDetermined(ValueError):
    """Fewer observation points than basis functions."""


class OutOfDomain(ValueError):
    """An evaluation argument lies outside the basis interval."""


class InsufficientData(ValueError):
    """Too few curves for the requested decomposition."""


class DegenerateResponse(ValueError):
    """The binary response contains only one class."""


class SchemaMismatch(ValueError):
    """Shapes, lengths or column names do not line up."""


class ParseError(ValueError):
    """A data file could not be parsed; carries the offending location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
