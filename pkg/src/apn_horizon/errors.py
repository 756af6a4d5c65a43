"""Exception types shared across the toolkit."""


class ParameterError(ValueError):
    """Raised when (m, r, ...) parameters fall outside what an operation accepts."""


class DomainError(ArithmeticError):
    """Raised for field-level domain violations such as inverting zero."""


class CapExceeded(RuntimeError):
    """Raised when an exhaustive computation exceeds its size cap and was not forced."""
