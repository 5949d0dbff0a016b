"""Exception types shared across the package."""


class LocalLabError(Exception):
    """Base class for all errors raised by locallab."""


class GraphError(LocalLabError, ValueError):
    """Malformed graph input (self-loop, duplicate edge, bad node id)."""


class NonTreeView(LocalLabError):
    """A cycle lies within distance k of the view root."""


class ProtocolFault(LocalLabError):
    """A protocol emitted a message to a node that is not a neighbor."""


class NonIntegralSizes(LocalLabError, ValueError):
    """Cluster sizes are not positive integers compatible with their labels."""


class SizeGuard(LocalLabError):
    """A construction would exceed the configured node budget."""


class InvalidCoefficients(LocalLabError, ValueError):
    """Rounding requires a 0/1 constraint matrix."""


class InfeasibleSubLP(LocalLabError):
    """Internal consistency failure: a local sub-LP came back infeasible."""


class NotDominating(LocalLabError, ValueError):
    """The supplied node set does not dominate the graph."""


class DisconnectedGraph(LocalLabError, ValueError):
    """The operation requires a connected graph."""


class BudgetExceeded(LocalLabError):
    """Instance is too large for the exact solver."""


class LPInfeasible(LocalLabError):
    pass


class LPUnbounded(LocalLabError):
    pass


class InvariantViolation(LocalLabError, AssertionError):
    """A proven invariant of an algorithm failed at runtime."""
