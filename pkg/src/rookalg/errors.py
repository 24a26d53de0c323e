"""Exception types shared across the package."""


class CapacityError(Exception):
    """Requested size exceeds a configured enumeration limit."""


class ContextError(ValueError):
    """Operands live in different (alpha, n) contexts or have mixed degrees."""


class EmptyCosetError(ValueError):
    """No double coset exists for the requested data (rank too small)."""


class ConsistencyError(Exception):
    """An internal cross-check failed.

    Carries a payload describing the offending data so a failure is
    reproducible instead of being silently clamped.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload
