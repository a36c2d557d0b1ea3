"""Exception hierarchy shared across the package."""


class QalsError(Exception):
    """Base class for all package errors."""


class DimensionError(QalsError):
    """Mismatched lengths between spin states, fields, or graphs."""


class DomainError(QalsError):
    """Argument outside its valid domain (s outside [0,1], T <= 0, ...)."""


class ResourceError(QalsError):
    """Request exceeds a configured size cap (qubit count, grid size)."""


class IntegrationError(QalsError):
    """Time integration failed (negative populations, norm drift)."""


class ContractError(QalsError):
    """Operation called outside its stated contract."""


class TrackingError(QalsError):
    """Eigenvector continuation lost track of the followed state."""

    def __init__(self, message, s=None):
        super().__init__(message)
        self.s = s


class FitError(QalsError):
    """Too few usable points for a least-squares fit."""


class ConfigError(QalsError):
    """Invalid experiment or solver configuration."""
