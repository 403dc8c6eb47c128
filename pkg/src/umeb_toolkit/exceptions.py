"""UMEB toolkit custom exception hierarchy.

Provides specific exception types for the failure modes of exact arithmetic,
matrix algebra, basis construction, verification, file parsing and run
configuration. Every exception carries an optional context dictionary that is
rendered into the message, so structured logs and CLI diagnostics show the
offending values.

Exception Hierarchy:
    UmebException (base)
    ├── ArithmeticDomainError
    │   ├── CycloDivisionByZeroError
    │   └── BackendMismatchError
    ├── ShapeMismatchError
    ├── ConstructionError
    │   ├── InvalidCompletionPairError
    │   └── InvalidParamsError
    ├── VerificationError
    │   └── InvalidComplementError
    ├── CodecError
    │   └── PairFileParseError
    └── ConfigError
        ├── ConfigValidationError
        └── ExactBackendUnavailableError
"""

from typing import Any


class UmebException(Exception):
    """Base exception for all UMEB toolkit errors.

    All toolkit-specific exceptions inherit from this class to allow
    catching every toolkit error with a single except clause.
    """

    def __init__(self, message: str, context: dict[str, Any] | None = None):
        """Initialize toolkit exception.

        Args:
            message: Error message
            context: Optional context dictionary for debugging
        """
        super().__init__(message)
        self.message = message
        self.context = context or {}

    def __str__(self) -> str:
        """Return string representation with context."""
        if self.context:
            context_str = "; ".join(f"{k}={v}" for k, v in self.context.items())
            return f"{self.message} ({context_str})"
        return self.message


# Arithmetic Errors


class ArithmeticDomainError(UmebException):
    """Base exception for scalar arithmetic errors."""

    pass


class CycloDivisionByZeroError(ArithmeticDomainError, ZeroDivisionError):
    """Raised when inverting the zero element of the cyclotomic field."""

    pass


class BackendMismatchError(ArithmeticDomainError):
    """Raised when exact and floating values meet in one operation or container.

    Attributes:
        backends: The backends that were found mixed
    """

    def __init__(
        self,
        message: str,
        backends: tuple[str, ...] | None = None,
        context: dict[str, Any] | None = None,
    ):
        if context is None:
            context = {}
        if backends:
            context["backends"] = ",".join(backends)
        super().__init__(message, context)
        self.backends = backends


class ShapeMismatchError(UmebException):
    """Raised when matrix or state shapes are not conformable.

    Attributes:
        operation: The operation that failed (e.g. 'matmul', 'apply')
        shapes: Shapes of the operands
    """

    def __init__(
        self,
        message: str,
        operation: str | None = None,
        shapes: tuple[Any, ...] | None = None,
        context: dict[str, Any] | None = None,
    ):
        if context is None:
            context = {}
        if operation:
            context["operation"] = operation
        if shapes:
            context["shapes"] = " x ".join(str(s) for s in shapes)
        super().__init__(message, context)
        self.operation = operation
        self.shapes = shapes


# Construction Errors


class ConstructionError(UmebException):
    """Base exception for basis construction errors."""

    pass


class InvalidCompletionPairError(ConstructionError):
    """Raised when the completion pair (c, d) is not orthonormal.

    Attributes:
        residual: Worst deviation from orthonormality
    """

    def __init__(
        self,
        message: str,
        residual: float | None = None,
        context: dict[str, Any] | None = None,
    ):
        if context is None:
            context = {}
        if residual is not None:
            context["residual"] = f"{residual:.3e}"
        super().__init__(message, context)
        self.residual = residual


class InvalidParamsError(ConstructionError):
    """Raised when parameters do not produce a unitary W and the run is checked.

    Attributes:
        residual: Unitarity residual of the W built from the parameters
    """

    def __init__(
        self,
        message: str,
        residual: float | None = None,
        context: dict[str, Any] | None = None,
    ):
        if context is None:
            context = {}
        if residual is not None:
            context["residual"] = f"{residual:.3e}"
        super().__init__(message, context)
        self.residual = residual


# Verification Errors


class VerificationError(UmebException):
    """Base exception for verification input errors."""

    pass


class InvalidComplementError(VerificationError):
    """Raised when a complement subspace is not orthogonal to the members.

    Attributes:
        member: Index of the member with the worst overlap
        generator: Index of the complement generator with the worst overlap
        residual: Modulus of the worst overlap
    """

    def __init__(
        self,
        message: str,
        member: int | None = None,
        generator: int | None = None,
        residual: float | None = None,
        context: dict[str, Any] | None = None,
    ):
        if context is None:
            context = {}
        if member is not None:
            context["member"] = member
        if generator is not None:
            context["generator"] = generator
        if residual is not None:
            context["residual"] = f"{residual:.3e}"
        super().__init__(message, context)
        self.member = member
        self.generator = generator
        self.residual = residual


# Codec Errors


class CodecError(UmebException):
    """Base exception for JSON encoding and decoding errors."""

    pass


class PairFileParseError(CodecError):
    """Raised when a basis pair or scalar payload cannot be parsed.

    Attributes:
        path: JSON path of the offending element (e.g. 'first[3]')
        source: File the payload came from, if any
    """

    def __init__(
        self,
        message: str,
        path: str | None = None,
        source: str | None = None,
        context: dict[str, Any] | None = None,
    ):
        if context is None:
            context = {}
        if path:
            context["path"] = path
        if source:
            context["source"] = source
        super().__init__(message, context)
        self.path = path
        self.source = source


# Configuration Errors


class ConfigError(UmebException):
    """Base exception for run configuration errors."""

    pass


class ConfigValidationError(ConfigError):
    """Raised when configuration validation fails.

    Attributes:
        config_key: Configuration key that failed validation
        config_value: The invalid configuration value
    """

    def __init__(
        self,
        message: str,
        config_key: str | None = None,
        config_value: Any = None,
        context: dict[str, Any] | None = None,
    ):
        if context is None:
            context = {}
        if config_key:
            context["config_key"] = config_key
        if config_value is not None:
            context["config_value"] = str(config_value)[:100]
        super().__init__(message, context)
        self.config_key = config_key
        self.config_value = config_value


class ExactBackendUnavailableError(ConfigError):
    """Raised when the exact backend is requested for angles outside multiples of π/12.

    Attributes:
        angle: The first angle that cannot be embedded
    """

    def __init__(
        self,
        message: str,
        angle: str | None = None,
        context: dict[str, Any] | None = None,
    ):
        if context is None:
            context = {}
        if angle:
            context["angle"] = angle
        super().__init__(message, context)
        self.angle = angle


__all__ = [
    "UmebException",
    "ArithmeticDomainError",
    "CycloDivisionByZeroError",
    "BackendMismatchError",
    "ShapeMismatchError",
    "ConstructionError",
    "InvalidCompletionPairError",
    "InvalidParamsError",
    "VerificationError",
    "InvalidComplementError",
    "CodecError",
    "PairFileParseError",
    "ConfigError",
    "ConfigValidationError",
    "ExactBackendUnavailableError",
]
