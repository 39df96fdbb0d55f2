"""Exception hierarchy.

Errors split into two families so callers (the CLI in particular) can tell a
bad configuration from bad input data.
"""


class GammaBalanceError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(GammaBalanceError, ValueError):
    """Invalid hyperparameters or experiment settings."""


class DomainError(GammaBalanceError, ValueError):
    """Argument outside the mathematical domain of a function."""


class DataError(GammaBalanceError, ValueError):
    """Input data cannot support the requested operation."""


class EmptyClass(DataError):
    pass


class EmptyInput(DataError):
    pass


class TooFewMinority(DataError):
    pass


class TooFewSamples(DataError):
    pass


class UndefinedMetric(DataError):
    pass


class SchemaError(DataError):
    pass


class ParseError(DataError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + loc)
        self.line = line
        self.column = column
