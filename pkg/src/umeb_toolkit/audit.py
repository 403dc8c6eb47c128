"""
Audit of the built-in reference examples.

An audit rebuilds an example from its printed angles, diffs the builders'
output entry by entry against the matrices and states stored as printed,
evaluates the printed angle conditions next to the unitarity ground truth and
runs the full verification for every first-basis pairing the example is
associated with. The verdict is decided by the exact verification only.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from .config import VerifyConfig
from .construct import (
    FirstBasisSpec,
    Sign,
    ThetaParams,
    build_S,
    build_W,
    closure_prediction,
    completion_operator,
    construct_pair,
    resolve_s_template,
    resolve_w_branch,
)
from .events import UmebEvents
from .fixtures import ReferenceExample, load_example, reference_spec
from .linalg import OperatorMatrix, StateVector
from .log_config import LoggingContext, get_context_logger
from .scalar import DEFAULT_TOLERANCE, Angle, AngleFrac, Backend, Scalar, angle_equals
from .verify import CheckResult, VerificationReport, check_theta_conditions, verify_pair


logger = get_context_logger("audit")


@dataclass
class ReconstructionDiff:
    """Builder output against the printed object."""

    name: str
    matches: bool
    max_deviation: float
    entry: tuple[int, int] | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "matches": self.matches,
            "max_deviation": self.max_deviation,
            "entry": list(self.entry) if self.entry is not None else None,
        }


@dataclass
class PairingAudit:
    pairing: str
    report: VerificationReport

    def to_dict(self) -> dict[str, Any]:
        return {"pairing": self.pairing, "report": self.report.to_dict()}


@dataclass
class AuditResult:
    """Everything one audit found, with the adjudicated verdict."""

    example: int
    title: str
    params: ThetaParams
    reconstruction: list[ReconstructionDiff] = field(default_factory=list)
    printed_conditions: list[CheckResult] = field(default_factory=list)
    w_branch: Sign | None = None
    closure_theta6: Angle | None = None
    pairings: list[PairingAudit] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    verdict: str = ""

    @property
    def reconstruction_matches(self) -> bool:
        return all(d.matches for d in self.reconstruction)

    @property
    def passed(self) -> bool:
        """True iff every pairing passes its mandatory checks."""
        return bool(self.pairings) and all(p.report.overall for p in self.pairings)

    def condition(self, name: str) -> CheckResult | None:
        return next((c for c in self.printed_conditions if c.name == name), None)

    def to_dict(self) -> dict[str, Any]:
        return {
            "example": self.example,
            "title": self.title,
            "theta": [str(a) for a in self.params.theta],
            "theta_prime": [str(a) for a in self.params.theta_prime],
            "s_branch": self.params.s_branch.value,
            "w_branch": self.w_branch.value if self.w_branch else None,
            "closure_theta6": str(self.closure_theta6) if self.closure_theta6 is not None else None,
            "reconstruction": [d.to_dict() for d in self.reconstruction],
            "printed_conditions": [c.to_dict() for c in self.printed_conditions],
            "pairings": [p.to_dict() for p in self.pairings],
            "notes": list(self.notes),
            "verdict": self.verdict,
            "passed": self.passed,
        }


def _column(values: Sequence[Scalar]) -> OperatorMatrix:
    return OperatorMatrix.from_columns([tuple(values)])


def _diff(name: str, built: OperatorMatrix, printed: OperatorMatrix, tolerance: float) -> ReconstructionDiff:
    worst, where = built.max_deviation(printed)
    return ReconstructionDiff(name, built.equals(printed, tolerance), worst, where)


def _basis_diff(
    built: Sequence[StateVector], printed: Sequence[StateVector], tolerance: float
) -> ReconstructionDiff:
    worst, where, matches = 0.0, None, True
    for k, (a, b) in enumerate(zip(built, printed, strict=True)):
        deviation, entry = _column(a.amplitudes).max_deviation(_column(b.amplitudes))
        if not a.equals(b, tolerance):
            matches = False
        if entry is not None and (where is None or deviation > worst):
            worst, where = deviation, (k, entry[0])
    return ReconstructionDiff("second basis", matches, worst, where)


def _printed_spec(example: ReferenceExample) -> FirstBasisSpec:
    """Completion pair the printed S refers to: the first pairing listed."""
    return reference_spec(example.pairings[0])


def _resolve_params(example: ReferenceExample, notes: list[str], tolerance: float) -> ThetaParams:
    spec = _printed_spec(example)
    resolved = resolve_s_template(example.s, spec, tolerance)
    if resolved is None:
        notes.append("printed S does not match either branch of the S template")
        prime = example.theta_prime or (AngleFrac.of(0), AngleFrac.of(0))
        return ThetaParams(example.theta, prime, Sign.PLUS)

    (p1, p2), branch = resolved
    if example.theta_prime is None:
        notes.append(f"theta_prime not printed; resolved from S as ({p1}, {p2}), branch {branch.value}")
    elif not all(angle_equals(a, b) for a, b in zip((p1, p2), example.theta_prime, strict=True)):
        notes.append(
            f"printed theta_prime ({', '.join(map(str, example.theta_prime))}) differs from "
            f"the one resolved from S ({p1}, {p2})"
        )
    else:
        notes.append(f"S branch resolved from the printed matrix: {branch.value}")
    return ThetaParams(example.theta, (p1, p2), branch)


def example_params(example: int, tolerance: float = DEFAULT_TOLERANCE) -> ThetaParams:
    """Construction angles of a reference example, θ' resolved from the printed S."""
    return _resolve_params(load_example(example), [], tolerance)


def _reconstruct(
    example: ReferenceExample, params: ThetaParams, tolerance: float
) -> list[ReconstructionDiff]:
    spec = _printed_spec(example)
    w = build_W(params.theta, Backend.EXACT)
    template = build_S(params.theta_prime, params.s_branch, Backend.EXACT)
    diffs = [
        _diff("W", w, example.w, tolerance),
        _diff("S", completion_operator(template, spec), example.s, tolerance),
    ]
    for name, k, printed in (("x'", 0, example.x), ("y'", 1, example.y), ("z'", 2, example.z)):
        diffs.append(_diff(name, _column(w.column(k)), _column(printed), tolerance))
    for name, k, printed in (("a", 0, example.a), ("b", 1, example.b)):
        diffs.append(_diff(name, _column(template.column(k)), _column(printed), tolerance))

    pair = construct_pair(params, spec, Backend.EXACT, unchecked=True)
    diffs.append(_basis_diff(pair.second, example.second_basis(), tolerance))
    return diffs


def _verdict(result: AuditResult) -> str:
    unitary = result.condition("unitarity (ground truth)")
    printed = [c for c in result.printed_conditions if c.name.startswith("theta:")]
    printed_state = "hold" if all(c.passed for c in printed) else "do not all hold"
    unitary_state = "unitary" if unitary is not None and unitary.passed else "not unitary"
    if result.passed:
        return (
            f"confirmed: every mandatory check passes in exact arithmetic for "
            f"{', '.join(p.pairing for p in result.pairings)}; W is {unitary_state}"
        )
    failing = []
    for audit in result.pairings:
        names = sorted({c.name for c in audit.report.failures(mandatory_only=True)})
        if names:
            failing.append(f"{audit.pairing}: {', '.join(names)}")
    return (
        f"refuted: exact verification fails ({'; '.join(failing)}); the printed angle "
        f"conditions {printed_state} but W is {unitary_state}"
    )


def run_audit(example: int, config: VerifyConfig | None = None) -> AuditResult:
    """Audit reference example 1, 2 or 3.

    Raises:
        ConfigValidationError: If ``example`` is not a known example
    """
    config = config or VerifyConfig()
    tolerance = config.tolerance
    data = load_example(example)

    with LoggingContext(operation=f"audit.example{example}"):
        notes: list[str] = []
        params = _resolve_params(data, notes, tolerance)
        result = AuditResult(example, data.title, params, notes=notes)
        result.reconstruction = _reconstruct(data, params, tolerance)
        result.printed_conditions = check_theta_conditions(params, tolerance, Backend.EXACT)
        result.w_branch = resolve_w_branch(params.theta)

        predicted = closure_prediction(params.theta)
        if predicted is None:
            notes.append("theta does not lie on either closure branch")
        else:
            result.closure_theta6 = predicted[5]
            if not angle_equals(predicted[5], params.theta[5]):
                notes.append(
                    f"closure predicts theta6 = {predicted[5]} on the "
                    f"{result.w_branch.value if result.w_branch else '?'} branch, "
                    f"printed theta6 = {params.theta[5]}"
                )
        logger.info(
            UmebEvents.AUDIT_RECONSTRUCTED,
            example=example,
            matches=result.reconstruction_matches,
            mismatched=[d.name for d in result.reconstruction if not d.matches],
        )

        exact_config = config.with_overrides(backend="exact")
        for name in data.pairings:
            pair = construct_pair(params, reference_spec(name), Backend.EXACT, unchecked=True)
            result.pairings.append(PairingAudit(name, verify_pair(pair, exact_config)))
        result.verdict = _verdict(result)
    return result


__all__ = [
    "ReconstructionDiff",
    "PairingAudit",
    "AuditResult",
    "example_params",
    "run_audit",
]
