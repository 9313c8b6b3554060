"""Exception hierarchy shared by all optframe modules."""


class OptframeError(Exception):
    """Base class for all optframe errors."""


class InvalidInput(OptframeError):
    """Malformed or out-of-domain user input (NaNs, negative weights, ...)."""


class DimensionError(InvalidInput):
    """A requested dimension is outside the admissible range."""


class RangeError(InvalidInput):
    """A scalar parameter lies outside its admissible interval."""


class TraceMismatch(InvalidInput):
    """Two vectors that must share a total sum do not."""


class DomainError(OptframeError):
    """A scalar function was evaluated outside its domain."""


class ConvergenceError(OptframeError):
    """An iterative routine failed to converge within its budget."""


class InternalInvariantViolation(OptframeError):
    """A quantity the theory guarantees was violated beyond roundoff.

    Signals a bug in the solver, not bad input.
    """


class InfeasibleDesign(OptframeError):
    """No vector family with the requested norms and spectrum exists."""


class StructureError(OptframeError):
    """The block structure of a computed spectrum fails its identities."""
