"""Logging context management with run IDs and hierarchical spans."""

import contextlib
import contextvars
import secrets
import time
from dataclasses import dataclass, field
from typing import Any

import structlog


_run_id_var: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "run_id", default=None
)
_span_id_var: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "span_id", default=None
)
_parent_id_var: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "parent_id", default=None
)
_operation_var: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "operation", default=None
)

_BOUND_KEYS = ("run_id", "span_id", "parent_id", "operation")


def _generate_id() -> str:
    """Generate a unique ID for run/span tracking.

    Returns:
        12-character hexadecimal ID
    """
    return secrets.token_hex(6)


@dataclass
class LoggingContext:
    """Logging context with run IDs and parent-child spans.

    A root context (a CLI command) generates the run id; nested contexts (one
    per verification check) inherit it and record the enclosing span as their
    parent. Ids are bound into structlog's contextvars for the lifetime of the
    context, so every record logged inside carries them.

    Example:
        ```python
        with LoggingContext(operation="verify") as run:
            with LoggingContext(operation="check_orthonormal") as span:
                span.set_namespace("result", passed=True)
                logger.info("umeb.check.completed", **span.to_log_dict())
        ```
    """

    run_id: str | None = None
    span_id: str | None = None
    parent_id: str | None = None
    operation: str | None = None

    result: dict[str, Any] = field(default_factory=dict)
    _custom_namespaces: dict[str, dict[str, Any]] = field(default_factory=dict)

    _start_time: float = field(default_factory=time.perf_counter)
    _tokens: list[contextvars.Token[Any]] = field(default_factory=list, init=False, repr=False)

    def __post_init__(self) -> None:
        """Initialize IDs if not provided."""
        if self.run_id is None:
            self.run_id = _run_id_var.get() or _generate_id()
        if self.span_id is None:
            self.span_id = _generate_id()
        if self.parent_id is None:
            self.parent_id = _span_id_var.get()

    def __enter__(self) -> "LoggingContext":
        """Enter context and bind to contextvars."""
        self._tokens = [
            _run_id_var.set(self.run_id),
            _span_id_var.set(self.span_id),
            _parent_id_var.set(self.parent_id),
            _operation_var.set(self.operation),
        ]
        structlog.contextvars.bind_contextvars(
            run_id=self.run_id,
            span_id=self.span_id,
            parent_id=self.parent_id,
            operation=self.operation,
        )
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        """Exit context and restore the enclosing span."""
        run_token, span_token, parent_token, operation_token = self._tokens
        _operation_var.reset(operation_token)
        _parent_id_var.reset(parent_token)
        _span_id_var.reset(span_token)
        _run_id_var.reset(run_token)

        enclosing = {
            "run_id": _run_id_var.get(),
            "span_id": _span_id_var.get(),
            "parent_id": _parent_id_var.get(),
            "operation": _operation_var.get(),
        }
        if enclosing["run_id"] is None:
            structlog.contextvars.unbind_contextvars(*_BOUND_KEYS)
        else:
            structlog.contextvars.bind_contextvars(**enclosing)

    def to_log_dict(self, include_namespaces: bool = True) -> dict[str, Any]:
        """Convert context to dictionary for logging.

        Args:
            include_namespaces: Whether to include the result and custom namespaces

        Returns:
            Dictionary with context fields suitable for structured logging
        """
        log_dict: dict[str, Any] = {
            "duration_ms": round(self.get_duration() * 1000.0, 3),
        }
        if include_namespaces:
            if self.result:
                log_dict["result"] = self.result
            for namespace, fields in self._custom_namespaces.items():
                if fields:
                    log_dict[namespace] = fields
        return log_dict

    def set_namespace(self, namespace: str, **fields: Any) -> None:
        """Set fields in a namespace.

        Args:
            namespace: Namespace name (e.g. "result", "grid", "params")
            **fields: Key-value pairs to set in the namespace
        """
        if namespace == "result":
            self.result.update(fields)
        else:
            self._custom_namespaces.setdefault(namespace, {}).update(fields)

    def get_namespace(self, namespace: str) -> dict[str, Any]:
        """Get fields from a namespace."""
        if namespace == "result":
            return dict(self.result)
        return dict(self._custom_namespaces.get(namespace, {}))

    def get_duration(self) -> float:
        """Get elapsed time since context creation, in seconds."""
        return time.perf_counter() - self._start_time


def get_current_context() -> LoggingContext | None:
    """Get current logging context from contextvars.

    Returns:
        Current LoggingContext if in a context, None otherwise
    """
    run_id = _run_id_var.get()
    if run_id is None:
        return None
    return LoggingContext(
        run_id=run_id,
        span_id=_span_id_var.get(),
        parent_id=_parent_id_var.get(),
        operation=_operation_var.get(),
    )


def clear_context() -> None:
    """Clear all logging context from contextvars.

    Useful for testing or explicit context cleanup.
    """
    _run_id_var.set(None)
    _span_id_var.set(None)
    _parent_id_var.set(None)
    _operation_var.set(None)
    with contextlib.suppress(KeyError):
        structlog.contextvars.unbind_contextvars(*_BOUND_KEYS)


__all__ = [
    "LoggingContext",
    "get_current_context",
    "clear_context",
]
