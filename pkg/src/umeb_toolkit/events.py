"""UMEB toolkit event type constants."""

from enum import Enum


class UmebEvents(str, Enum):
    """Event type constants for structured logging."""

    # Scalar events
    PHASE_FLOAT_FALLBACK = "umeb.phase.float_fallback"

    # Construction events
    BASIS_CONSTRUCTED = "umeb.construct.basis"
    PAIR_CONSTRUCTED = "umeb.construct.pair"
    PARAMS_SAMPLED = "umeb.construct.sampled"
    PARAMS_REJECTED = "umeb.construct.rejected"

    # Verification events
    CHECK_STARTED = "umeb.check.started"
    CHECK_COMPLETED = "umeb.check.completed"
    CHECK_FAILED = "umeb.check.failed"
    GRID_SCAN_COMPLETED = "umeb.grid.completed"
    GRID_REFINED = "umeb.grid.refined"
    EXACT_CERTIFICATE = "umeb.grid.exact_certificate"
    VERIFY_COMPLETED = "umeb.verify.completed"

    # Codec events
    FILE_LOADED = "umeb.codec.loaded"
    FILE_WRITTEN = "umeb.codec.written"
    PARSE_FAILED = "umeb.codec.parse_failed"

    # Command events
    COMMAND_STARTED = "umeb.cli.started"
    COMMAND_COMPLETED = "umeb.cli.completed"
    AUDIT_RECONSTRUCTED = "umeb.audit.reconstructed"
    SWEEP_SAMPLE = "umeb.sweep.sample"
    SWEEP_COMPLETED = "umeb.sweep.completed"


__all__ = ["UmebEvents"]
