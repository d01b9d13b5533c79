"""Exception types shared across the package.

Every named failure mode raised by the library derives from EulerAdicError,
so callers can catch package errors without catching programming mistakes.
"""


class EulerAdicError(Exception):
    """Base class for all errors raised by this package."""


class RootHasNoInEdges(EulerAdicError):
    """Incoming edges were requested for the root vertex (0,0)."""


class IndexBeyondPath(EulerAdicError):
    """A level index outside [0, len(path)] was requested."""


class LengthMismatch(EulerAdicError):
    """Two paths of different lengths cannot be order-compared."""


class TooLarge(EulerAdicError):
    """An enumeration or layout would exceed the configured cap."""


class MaximalPath(EulerAdicError):
    """The successor of a maximal path is undefined."""


class MinimalPath(EulerAdicError):
    """The predecessor of a minimal path is undefined."""


class OrbitOverflow(EulerAdicError):
    """An orbit step would leave the fiber of the terminal vertex.

    Carries the requested rank and the valid closed range [0, fiber_size - 1].
    """

    def __init__(self, requested, fiber_size):
        self.requested = requested
        self.fiber_size = fiber_size
        super().__init__(
            f"requested rank {requested} outside [0, {fiber_size - 1}]"
        )
