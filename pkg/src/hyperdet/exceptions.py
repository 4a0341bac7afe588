"""
Exceptions for the hyperdet package.
"""

from typing import Any, Optional


class HyperdetError(Exception):
    """Base exception for engine errors."""

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None):
        self.details = details or {}
        super().__init__(message)


class MatrixFormatError(HyperdetError):
    """Exception for malformed matrix text or entries outside {-1, 0, 1}."""

    pass


class NotFullError(HyperdetError):
    """Exception for operations that need an n-full host."""

    pass


class NotStandardizedError(HyperdetError):
    """Exception for hosts whose first row or column is not all +1."""

    pass


class InvalidContributorError(HyperdetError):
    """Exception for contributors that do not live on their host."""

    pass


class PermutationError(HyperdetError):
    """Exception for malformed permutations."""

    pass


class BudgetExceededError(HyperdetError):
    """Exception raised instead of running an enumeration past its budget."""

    def __init__(self, operation: str, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"{operation} needs {required} visits but the budget is {budget}",
            details={"operation": operation, "required": required, "budget": budget},
        )


class IdentityCheckError(HyperdetError):
    """Exception for a verified identity that did not hold."""

    pass


class HyperdetConfigurationError(HyperdetError):
    """Exception for configuration errors."""

    pass
