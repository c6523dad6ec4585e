"""Exception hierarchy.

Errors fall into three families that the CLI maps to exit codes:
configuration/usage problems, bad input data, and numerical failures.
"""


class MCGraphError(Exception):
    """Base class for all package errors."""


class ConfigError(MCGraphError, ValueError):
    """Invalid parameters or usage."""


class DimensionError(ConfigError):
    pass


class TooManyReferences(ConfigError):
    pass


class EmptyInput(ConfigError):
    pass


class GraphError(MCGraphError, ValueError):
    """Malformed graph input."""


class InvalidWeight(GraphError):
    pass


class SelfLoopRejected(GraphError):
    pass


class EdgeListParseError(GraphError):
    pass


class NonFiniteFeature(GraphError):
    pass


class NumericalError(MCGraphError, ArithmeticError):
    """A numerical routine could not produce a trustworthy result."""


class CountOverflow(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class ZeroMatrix(NumericalError):
    pass


class AllEigenvaluesZero(NumericalError):
    pass
