"""Exception hierarchy shared by every module."""


class WCycleError(Exception):
    """Base class for all toolkit errors."""


class ParseError(WCycleError, ValueError):
    """Malformed edge-list or Pajek input.

    ``line`` is the 1-based line number of the offending record, or None
    when the problem is not tied to a single line.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyGraphError(WCycleError, ValueError):
    """Input contained no usable edges."""


class UnknownNodeError(WCycleError, KeyError):
    """A node id outside ``0..N-1`` was requested."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown node"


class IntegrityError(WCycleError, ValueError):
    """Derived structure does not belong to the graph it was paired with."""


class ThresholdUndefinedError(WCycleError, ValueError):
    """The epidemic threshold has a zero denominator for this graph."""


class UndefinedMetricError(WCycleError, ValueError):
    """A metric has no value for the given arguments (e.g. two empty sets)."""


class ConfigError(WCycleError, ValueError):
    """Invalid experiment configuration."""
