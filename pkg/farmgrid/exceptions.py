"""FarmGrid exceptions."""


class FarmGridException(Exception):
    """Base class for all FarmGrid exceptions."""


class FarmGridWarning(UserWarning):
    """Base class for FarmGrid warnings."""


class BatterySpecError(FarmGridException):
    """Class for invalid battery specifications."""


class DispatchError(FarmGridException):
    """Class for errors in battery dispatch and flow settlement."""


class TariffError(FarmGridException):
    """Class for errors in tariff schedules."""


class TraceError(FarmGridException):
    """Class for errors in exogenous load/PV traces."""


class TraceParseError(TraceError):
    """Class for unparsable trace files.

    Attributes
    ----------
    line : int
        1-based line of the file where parsing failed
    """

    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class TraceValidationError(TraceError):
    """Class for trace values violating trace invariants.

    Attributes
    ----------
    row : int
        0-based data row of the offending value
    field : str
        Name of the offending column
    """

    def __init__(self, message, row=None, field=None):
        super().__init__(message)
        self.row = row
        self.field = field


class TraceLengthError(TraceError):
    """Class for traces with an invalid number of steps."""


class TraceWarning(FarmGridWarning):
    """Class for trace warnings."""


class DiscretizationError(FarmGridException):
    """Class for errors in state discretization."""


class QLearningError(FarmGridException):
    """Class for errors in Q-learning training and evaluation."""


class OracleError(FarmGridException):
    """Class for errors in the backward-induction oracle."""


class ConfigError(FarmGridException):
    """Class for invalid run configurations."""


class ComparisonError(FarmGridException):
    """Class for errors in policy comparison."""


class PlotDataError(FarmGridException):
    """Class for errors in plot data export."""


class MetricsWarning(FarmGridWarning):
    """Class for metrics warnings."""
