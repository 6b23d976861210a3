"""Exception types raised across the package."""


class TCError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParameterError(TCError, ValueError):
    """Model or sweep parameters outside their domain."""


class ContractError(TCError, ValueError):
    """Malformed input to a numerical routine."""


class CapExhaustedError(TCError, RuntimeError):
    """Block scan hit its cap while energies were still decreasing."""

    def __init__(self, message, k_max=None, best_k=None):
        super().__init__(message)
        self.k_max = k_max
        self.best_k = best_k


class BracketError(TCError, ValueError):
    """Root bracket without a sign change."""
