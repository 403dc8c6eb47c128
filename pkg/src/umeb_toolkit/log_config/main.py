"""Logging configuration and utilities."""

import logging
import sys
from typing import Any

import structlog


def get_context_logger(name: str) -> Any:
    """Get a context-aware logger.

    Args:
        name: Logger name

    Returns:
        Structured logger instance
    """
    return structlog.get_logger(name)


def _stderr_logger(*_args: Any) -> structlog.PrintLogger:
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(level: str = "INFO", json_output: bool = False) -> None:
    """Configure structlog for a command-line run.

    Log records go to stderr so that standard output carries only the
    human-readable summary.

    Args:
        level: Minimum log level name (e.g. "DEBUG", "INFO")
        json_output: Render records as JSON lines instead of console text
    """
    numeric_level = logging.getLevelName(level.upper())
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO

    renderer: Any = (
        structlog.processors.JSONRenderer()
        if json_output
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        # sys.stderr is resolved when each logger is created
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


__all__ = [
    "get_context_logger",
    "configure_logging",
]
