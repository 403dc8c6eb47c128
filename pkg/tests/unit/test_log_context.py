"""Tests for LoggingContext and logging configuration."""

import json

import pytest
import structlog

from umeb_toolkit.events import UmebEvents
from umeb_toolkit.log_config import (
    LoggingContext,
    clear_context,
    configure_logging,
    get_context_logger,
    get_current_context,
)


@pytest.mark.unit
class TestLoggingContext:
    """Test suite for LoggingContext class."""

    def teardown_method(self):
        """Clean up context after each test."""
        clear_context()

    def test_context_generates_ids(self):
        """Test that context generates run_id and span_id."""
        ctx = LoggingContext(operation="verify")

        assert ctx.run_id is not None
        assert ctx.span_id is not None
        assert len(ctx.run_id) == 12
        assert ctx.parent_id is None

    def test_context_manager(self):
        """Test context manager sets and clears contextvars."""
        with LoggingContext(operation="cli.verify") as ctx:
            current = get_current_context()
            assert current is not None
            assert current.run_id == ctx.run_id
            assert current.operation == "cli.verify"

        assert get_current_context() is None

    def test_nested_contexts_share_run_id(self):
        """Test a nested span inherits the run id and records its parent."""
        with LoggingContext(operation="verify_pair") as outer:
            with LoggingContext(operation="check.orthonormal") as inner:
                assert inner.run_id == outer.run_id
                assert inner.parent_id == outer.span_id
            current = get_current_context()
            assert current.span_id == outer.span_id

    def test_namespaces(self):
        """Test result and custom namespaces appear in the log dict."""
        ctx = LoggingContext(operation="check")
        ctx.set_namespace("result", passed=True, residual=0.0)
        ctx.set_namespace("grid", nt=181)

        log_dict = ctx.to_log_dict()
        assert log_dict["result"] == {"passed": True, "residual": 0.0}
        assert log_dict["grid"] == {"nt": 181}
        assert "duration_ms" in log_dict
        assert "result" not in ctx.to_log_dict(include_namespaces=False)


@pytest.mark.unit
class TestConfigureLogging:
    """Structlog configuration."""

    def teardown_method(self):
        structlog.reset_defaults()

    def test_json_records_go_to_stderr(self, capsys):
        """Test JSON output carries the event name and bound context."""
        configure_logging("INFO", json_output=True)
        logger = get_context_logger("test")
        with LoggingContext(operation="cli.audit"):
            logger.info(UmebEvents.COMMAND_STARTED, command="audit")
        captured = capsys.readouterr()
        assert captured.out == ""
        record = json.loads(captured.err.strip().splitlines()[-1])
        assert record["event"] == "umeb.cli.started"
        assert record["operation"] == "cli.audit"
        assert record["level"] == "info"

    def test_level_filters_debug(self, capsys):
        """Test DEBUG records are dropped at INFO."""
        configure_logging("INFO", json_output=True)
        get_context_logger("test").debug(UmebEvents.CHECK_STARTED, check="x")
        assert capsys.readouterr().err == ""
