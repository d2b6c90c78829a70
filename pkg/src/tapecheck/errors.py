"""Exception types shared across the toolkit."""


class TapecheckError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(TapecheckError):
    """A machine document violates the schema or a machine invariant."""


class BoundComputationInfeasible(TapecheckError):
    """A certified bound constant could not be computed within the effort limit."""


class UnsupportedBound(TapecheckError):
    """The bound does not support the requested operation (wrong growth class)."""


class OutsideDecidableRange(TapecheckError):
    """Multi-tape check requested for a bound with no n0 where T(n0) < n0 + 1."""


class EffortExceeded(TapecheckError):
    """An analysis blew through its configured effort limit."""


class ExtractionPrecondition(TapecheckError):
    """DFA extraction requires a machine verified to run within its bound."""
