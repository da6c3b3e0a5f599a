"""
Custom exception classes for the Groebner selection-strategy toolkit.
Provides specific exception types for different error scenarios.
"""


class GroebnerRLException(Exception):
    """Base exception class for all toolkit errors."""

    def __init__(self, message: str, error_code: str = None, details: dict = None):
        """
        Initialize the exception with message and optional details.

        Args:
            message: Human-readable error message
            error_code: Optional error code for programmatic handling
            details: Optional dictionary with additional error details
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}

    def __str__(self):
        """Return string representation of the exception."""
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message


class DimensionError(GroebnerRLException):
    """Raised when exponent vectors or polynomials live in different rings."""

    def __init__(self, message: str = "Dimension mismatch", **kwargs):
        super().__init__(message, error_code="DIMENSION_ERROR", **kwargs)


class DivisibilityError(GroebnerRLException):
    """Raised when a monomial quotient is requested but does not exist."""

    def __init__(self, message: str = "Monomial is not divisible", **kwargs):
        super().__init__(message, error_code="DIVISIBILITY_ERROR", **kwargs)


class FieldZeroDivisionError(GroebnerRLException):
    """Raised when inverting zero in the prime field."""

    def __init__(self, message: str = "Zero has no inverse", **kwargs):
        super().__init__(message, error_code="FIELD_ZERO_DIVISION", **kwargs)


class InvalidArgumentError(GroebnerRLException):
    """Raised when an operation receives an argument outside its domain."""

    def __init__(self, message: str = "Invalid argument", **kwargs):
        super().__init__(message, error_code="INVALID_ARGUMENT", **kwargs)


class InvalidStateError(GroebnerRLException):
    """Raised when an operation is not allowed in the current state."""

    def __init__(self, message: str = "Invalid state", **kwargs):
        super().__init__(message, error_code="INVALID_STATE", **kwargs)


class InvalidActionError(GroebnerRLException):
    """Raised when an environment action is out of range."""

    def __init__(self, action: int = None, num_actions: int = None, **kwargs):
        message = "Invalid action"
        if action is not None and num_actions is not None:
            message += f": {action} not in [0, {num_actions})"
        super().__init__(message, error_code="INVALID_ACTION", **kwargs)
        self.action = action
        self.num_actions = num_actions


class ShapeError(GroebnerRLException):
    """Raised when an observation does not match the network width."""

    def __init__(self, expected: int = None, actual: int = None, **kwargs):
        message = "Shape mismatch"
        if expected is not None and actual is not None:
            message += f": expected width {expected}, got {actual}"
        super().__init__(message, error_code="SHAPE_ERROR", **kwargs)
        self.expected = expected
        self.actual = actual


class ParseError(GroebnerRLException):
    """Raised when polynomial or ideal text cannot be parsed."""

    def __init__(self, message: str = "Parse error", line: int = None, column: int = None, **kwargs):
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message, error_code="PARSE_ERROR", **kwargs)
        self.line = line
        self.column = column


class ModelFormatError(GroebnerRLException):
    """Raised when a model file is corrupt or does not match the environment."""

    def __init__(self, message: str = "Invalid model file", **kwargs):
        super().__init__(message, error_code="MODEL_FORMAT_ERROR", **kwargs)


class RolloutLimitError(GroebnerRLException):
    """Raised when a value rollout exceeds its safety cap."""

    def __init__(self, limit: int = None, **kwargs):
        message = "Value rollout exceeded its step cap"
        if limit is not None:
            message += f" ({limit} steps)"
        super().__init__(message, error_code="ROLLOUT_LIMIT", **kwargs)
        self.limit = limit


class NonFiniteLossError(GroebnerRLException):
    """Raised when the surrogate objective or its gradient is not finite."""

    def __init__(self, message: str = "Non-finite loss", **kwargs):
        super().__init__(message, error_code="NON_FINITE_LOSS", **kwargs)


class ValidationError(GroebnerRLException):
    """Raised when input validation fails."""

    def __init__(self, message: str = "Invalid input provided", field_name: str = None, **kwargs):
        if field_name:
            message = f"Invalid {field_name}: {message}"
        super().__init__(message, error_code="VALIDATION_ERROR", **kwargs)
        self.field_name = field_name


class ConfigurationError(GroebnerRLException):
    """Raised when configuration is invalid or missing."""

    def __init__(self, message: str = "Configuration error", config_key: str = None, **kwargs):
        if config_key:
            message = f"Configuration error for '{config_key}': {message}"
        super().__init__(message, error_code="CONFIG_ERROR", **kwargs)
        self.config_key = config_key
