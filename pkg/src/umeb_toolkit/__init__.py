"""
UMEB Toolkit Package

Construction and verification of mutually unbiased pairs of unextendible
maximally entangled bases (UMEBs) in C²⊗C³, in exact cyclotomic arithmetic
over Q(ζ₂₄) and in floating point.

This package provides:
- construct_pair: Build a first basis and its unbiased partner from template angles
- verify_pair: Orthonormality, entanglement, unextendibility and unbiasedness checks
- run_audit: Rebuild and adjudicate the built-in reference examples
- run_sweep: Property sweep over the closure-generated parameter family
- Codec functions for the JSON pair file format
- Exception types for granular error handling

Usage:
    from umeb_toolkit import ThetaParams, FirstBasisSpec, construct_pair, verify_pair

    params = ThetaParams.from_pi_fracs(["0", "1/3", "0", "1", "0", "1/3"], ["1/3", "11/6"], "-")
    pair = construct_pair(params, FirstBasisSpec.rotated())
    report = verify_pair(pair)
    assert report.overall

    # Error handling
    try:
        pair = read_pair(Path("pair.json"))
    except PairFileParseError as e:
        print(f"Parse failed: {e.message}")
        print(f"Context: {e.context}")
"""

from ._version import __version__
from .audit import AuditResult, example_params, run_audit
from .codec import decode_pair, encode_pair, pair_digest, read_pair, write_pair
from .config import BackendChoice, RunConfig, SweepConfig, VerifyConfig
from .construct import (
    BasisPair,
    FirstBasisSpec,
    Sign,
    ThetaParams,
    build_first_basis,
    build_S,
    build_second_basis,
    build_W,
    completion_operator,
    construct_pair,
    resolve_s_template,
    resolve_w_branch,
    sample_valid_params,
    unitarity_closure,
)
from .cyclotomic import CycloNumber
from .exceptions import (
    ArithmeticDomainError,
    BackendMismatchError,
    CodecError,
    ConfigError,
    ConfigValidationError,
    ConstructionError,
    CycloDivisionByZeroError,
    ExactBackendUnavailableError,
    InvalidComplementError,
    InvalidCompletionPairError,
    InvalidParamsError,
    PairFileParseError,
    ShapeMismatchError,
    UmebException,
    VerificationError,
)
from .linalg import OperatorMatrix, StateVector
from .scalar import AngleFrac, Backend
from .sweep import SweepSummary, run_sweep
from .verify import CheckResult, VerificationReport, verify_pair


__all__ = [
    "__version__",
    # Arithmetic and linear algebra
    "Backend",
    "AngleFrac",
    "CycloNumber",
    "OperatorMatrix",
    "StateVector",
    # Construction
    "Sign",
    "ThetaParams",
    "FirstBasisSpec",
    "BasisPair",
    "build_first_basis",
    "build_W",
    "build_S",
    "completion_operator",
    "build_second_basis",
    "unitarity_closure",
    "resolve_w_branch",
    "resolve_s_template",
    "sample_valid_params",
    "construct_pair",
    # Verification
    "CheckResult",
    "VerificationReport",
    "verify_pair",
    # Commands
    "AuditResult",
    "example_params",
    "run_audit",
    "SweepSummary",
    "run_sweep",
    # Codec
    "encode_pair",
    "decode_pair",
    "pair_digest",
    "read_pair",
    "write_pair",
    # Configuration
    "BackendChoice",
    "VerifyConfig",
    "SweepConfig",
    "RunConfig",
    # Exceptions
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
