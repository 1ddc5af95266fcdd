"""Exception types shared across the package."""


class QuditQKDError(Exception):
    """Base class for all package errors."""


class DomainError(QuditQKDError, ValueError):
    """A parameter lies outside the region where a formula is defined."""


class DimensionError(QuditQKDError, ValueError):
    """Operands live in Hilbert spaces of different dimension."""


class SolverError(QuditQKDError, RuntimeError):
    """A root search failed to bracket or converge."""


class PreconditionError(QuditQKDError, ValueError):
    """Input violates a structural precondition (e.g. a non-symmetric state set)."""


class UndefinedConditionalError(QuditQKDError, ValueError):
    """Conditioning on an outcome that has zero probability."""
