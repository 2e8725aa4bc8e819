"""Exception hierarchy shared across the toolkit."""


class BellSimError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(BellSimError):
    """A configuration value or combination violates its contract."""


class QuadratureError(BellSimError):
    """Adaptive integration could not reach the requested tolerance.

    Raised instead of silently returning a truncated estimate.
    """


class UndefinedStatisticError(BellSimError):
    """A statistic has no defined value for the given data (e.g. zero counts)."""


class EventOverflowError(BellSimError):
    """Retained event streams exceeded the configured cap."""


class NotPlanePolarizedError(BellSimError):
    """An operation that requires a plane-polarized pulse received an elliptical one."""
