"""Exception hierarchy shared by the library and the command line."""


class MarginFreeError(Exception):
    """Base class for every error raised by this package."""


class TableError(MarginFreeError, ValueError):
    """A table, weight vector or cell violates a structural requirement."""


class ZeroCellError(TableError):
    """A strictly positive cell was required but a zero (or negative) was found."""

    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col


class InvalidTargets(MarginFreeError, ValueError):
    pass


class NonConvergence(MarginFreeError, RuntimeError):
    """Iterative proportional fitting did not reach the requested tolerance."""

    def __init__(self, max_iter, error):
        super().__init__(
            f"IPF did not converge after {max_iter} sweeps "
            f"(max margin error {error:.3e}); the target margins may be "
            f"infeasible for the zero pattern of the table"
        )
        self.max_iter = max_iter
        self.error = error


class DimensionTooLarge(MarginFreeError, ValueError):
    pass


class MissingAxis(MarginFreeError, ValueError):
    pass


class UnknownDataset(MarginFreeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown dataset"


class ParseError(MarginFreeError, ValueError):
    """Malformed CSV input; carries the 1-based line and column when known."""

    def __init__(self, message, line=None, column=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.line = line
        self.column = column
