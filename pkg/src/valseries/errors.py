class UsageError(ValueError):
    """Arguments outside an operation's contract (wrong ring, composite modulus, ...)."""


class DomainError(ValueError):
    """Mathematically undefined input, e.g. the valuation of zero."""


class InvariantViolation(RuntimeError):
    """An internally checked identity failed. Never expected; always loud."""
