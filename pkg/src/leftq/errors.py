"""Exception types shared across the package."""


class LeftqError(Exception):
    pass


class MalformedInput(LeftqError):
    pass


class NotLeftQuasigroup(LeftqError):
    pass


class CapExceeded(LeftqError):
    pass


class NotACongruence(LeftqError):
    pass


class OrderViolation(LeftqError):
    pass


class NotWellDefined(LeftqError):
    pass


class NotNormal(LeftqError):
    pass


class SpecViolation(LeftqError):
    pass


class PreconditionFailed(LeftqError):
    pass


class ConsistencyError(LeftqError):
    """Two independent computations of the same quantity disagree."""


class BudgetExhausted(LeftqError):
    """A search stopped at its budget without deciding."""
