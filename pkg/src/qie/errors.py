"""Exception types shared across the engine library."""


class QieError(Exception):
    """Base class for all library errors."""


class DomainError(QieError, ValueError):
    """Input outside the physical or mathematical domain of an operation."""


class DegenerateCycleError(DomainError):
    """Cycle frequencies that leave no temperature gap (omega3 <= omega4)."""


class StalledEngineError(QieError):
    """Requested quantity undefined because the cycle extracts no work (Q_h <= 0)."""


class ResourceCapError(QieError):
    """Exact enumeration would exceed the configured atom cap."""
