"""Exception hierarchy shared by all modules."""


class WrDriftError(Exception):
    """Base class for every error raised by wrdrift."""


class ModelValidityError(WrDriftError, ValueError):
    """An input lies outside the range where the physical model holds."""


class ConfigError(WrDriftError, ValueError):
    """A scenario or plan is inconsistent or malformed."""


class ReportError(WrDriftError):
    """A report cannot be assembled from the available series."""


class UndefinedRatioError(WrDriftError, ZeroDivisionError):
    pass
