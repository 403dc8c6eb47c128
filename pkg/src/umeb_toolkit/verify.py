"""
Predicates and oracles for UMEB pairs, assembled into an auditable report.

Mandatory checks decide the overall verdict: orthonormality of both bases,
maximal entanglement of members 0–3 of both bases, unextendibility of both
bases and mutual unbiasedness. When the pair carries its construction
parameters, advisory checks on the template angles, the perpendicularity
relations and the F†(·)F modulus pattern are reported alongside.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ._version import __version__
from .codec import pair_digest
from .config import VerifyConfig
from .construct import (
    BasisPair,
    FirstBasisSpec,
    ThetaParams,
    build_F,
    build_S,
    build_W,
    completion_operator,
)
from .events import UmebEvents
from .exceptions import ExactBackendUnavailableError, InvalidComplementError
from .linalg import (
    OperatorMatrix,
    StateVector,
    adjoint,
    gram,
    inner,
    is_unitary,
    kron,
    matmul,
    schmidt_profile,
)
from .log_config import LoggingContext, get_context_logger
from .scalar import (
    DEFAULT_TOLERANCE,
    PI,
    THIRD_PI,
    TWO_PI,
    Angle,
    AngleFrac,
    Backend,
    Scalar,
    abs2,
    angle_radians,
    conj,
    from_rational,
    is_zero,
    magnitude,
    phase,
    real_part,
    resolve_backend,
    sqrt3,
    sub_angles,
    uniform_backend,
)
from .unextendible import (
    DEFAULT_EPSILON,
    DEFAULT_GRID,
    ComplementSubspace,
    is_unextendible,
    scan_complement,
    search_complement,
)


logger = get_context_logger("verify")

INDEX_NOTE = (
    "entangled members are indexed j = 0..3 (sigma_0..sigma_3); "
    "the printed construction lists j = 1,2,3"
)


@dataclass
class CheckResult:
    """One report entry. A failed entry always carries a witness."""

    name: str
    backend: Backend
    passed: bool
    residual: float
    witness: Any = None
    mandatory: bool = True
    detail: str | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "backend": self.backend.value,
            "pass": self.passed,
            "residual": self.residual,
            "witness": self.witness,
            "mandatory": self.mandatory,
        }
        if self.detail:
            data["detail"] = self.detail
        return data


@dataclass
class VerificationReport:
    """Append-only list of check results with a derived overall verdict."""

    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    input_hash: str | None = None
    tool_version: str = __version__

    def append(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, checks: Sequence[CheckResult]) -> None:
        for check in checks:
            self.append(check)

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks if c.mandatory)

    def failures(self, mandatory_only: bool = False) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed and (c.mandatory or not mandatory_only)]

    def worst_failure(self) -> CheckResult | None:
        failed = self.failures(mandatory_only=True) or self.failures()
        return max(failed, key=lambda c: c.residual) if failed else None

    def find(self, name: str, backend: Backend | None = None) -> CheckResult | None:
        for check in self.checks:
            if check.name == name and (backend is None or check.backend is backend):
                return check
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
            "notes": list(self.notes),
            "tool_version": self.tool_version,
            "input_hash": self.input_hash,
        }


def _exact_or_tol(value: Scalar, tolerance: float) -> bool:
    return is_zero(value, tolerance)


def _states_backend(states: Sequence[StateVector]) -> Backend:
    return uniform_backend([s.amplitudes[0] for s in states])


def check_orthonormal(
    states: Sequence[StateVector], tolerance: float = DEFAULT_TOLERANCE, label: str = "basis"
) -> CheckResult:
    """Gram = I; witness is the worst (i, j)."""
    backend = _states_backend(states)
    g = gram(states)
    residual, worst = g.max_deviation(OperatorMatrix.identity(len(states), backend))
    passed = worst is None if backend is Backend.EXACT else residual < tolerance
    return CheckResult(
        f"orthonormal[{label}]",
        backend,
        passed,
        residual,
        witness=None if passed else list(worst or (0, 0)),
    )


def check_max_entangled(
    state: StateVector, tolerance: float = DEFAULT_TOLERANCE, label: str = "state"
) -> CheckResult:
    """MM† = I₂/2; witness carries the Schmidt coefficients."""
    profile = schmidt_profile(state, tolerance)
    return CheckResult(
        f"max-entangled[{label}]",
        profile.backend,
        profile.maximally_entangled,
        profile.residual,
        witness=None
        if profile.maximally_entangled
        else {"coefficients": list(profile.coefficients), "rank": profile.rank},
    )


def check_members_max_entangled(
    states: Sequence[StateVector], tolerance: float = DEFAULT_TOLERANCE, label: str = "basis"
) -> CheckResult:
    """Members 0–3 all maximally entangled; witness is the worst member."""
    entries = [check_max_entangled(states[j], tolerance, f"{label}:{j}") for j in range(4)]
    worst_index = max(range(4), key=lambda j: entries[j].residual)
    worst = entries[worst_index]
    passed = all(e.passed for e in entries)
    return CheckResult(
        f"max-entangled[{label}]",
        worst.backend,
        passed,
        worst.residual,
        witness=None if passed else {"member": worst_index, **(worst.witness or {})},
    )


def check_unextendible(
    members: Sequence[StateVector],
    complement: ComplementSubspace,
    grid: tuple[int, int] = DEFAULT_GRID,
    epsilon: float = DEFAULT_EPSILON,
    refine: bool = True,
    tolerance: float = DEFAULT_TOLERANCE,
    label: str = "basis",
) -> CheckResult:
    """No maximally entangled state in the complement of ``members``.

    Raises:
        InvalidComplementError: If the complement is not orthogonal to the members
    """
    result = search_complement(complement, members, grid, refine, tolerance)
    passed = is_unextendible(result, epsilon)
    detail = "product-span certificate" if result.certified else f"grid {grid[0]}x{grid[1]}"
    return CheckResult(
        f"unextendible[{label}]",
        complement.v1.backend,
        passed,
        result.max_min_singular,
        witness=None if passed else result.witness,
        detail=detail,
    )


def _overlap_residual(
    first: Sequence[StateVector], second: Sequence[StateVector], target: Scalar, tolerance: float
) -> tuple[bool, float, tuple[int, int] | None]:
    worst, where, passed = 0.0, None, True
    for i, phi in enumerate(first):
        for j, psi in enumerate(second):
            deviation = abs2(inner(phi, psi)) - target
            if not _exact_or_tol(deviation, tolerance):
                passed = False
            size = magnitude(deviation)
            if where is None or size > worst:
                worst, where = size, (i, j)
    return passed, worst, where


def check_mutually_unbiased(
    first: Sequence[StateVector],
    second: Sequence[StateVector],
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckResult:
    """|⟨φᵢ|ψⱼ⟩|² = 1/6 for all 36 pairs; witness is the worst (i, j)."""
    backend = _states_backend([*first, *second])
    sixth = from_rational(Fraction(1, 6), backend)
    passed, residual, where = _overlap_residual(first, second, sixth, tolerance)
    return CheckResult(
        "mutually-unbiased",
        backend,
        passed,
        residual,
        witness=None if passed else list(where or (0, 0)),
    )


def check_modulus_pattern(
    f: OperatorMatrix, w: OperatorMatrix, s: OperatorMatrix, tolerance: float = DEFAULT_TOLERANCE
) -> CheckResult:
    """Columns 0–3 of F†(I₂⊗W)F and 4–5 of F†(S⊗W)F have all moduli 1/√6."""
    backend = uniform_backend([f.entries[0], w.entries[0], s.entries[0]])
    sixth = from_rational(Fraction(1, 6), backend)
    f_adj = adjoint(f)
    blocks = {
        "I2⊗W": (matmul(matmul(f_adj, kron(OperatorMatrix.identity(2, backend), w)), f), range(4)),
        "S⊗W": (matmul(matmul(f_adj, kron(s, w)), f), range(4, 6)),
    }
    worst, witness, passed = 0.0, None, True
    for name, (block, columns) in blocks.items():
        for j in columns:
            for i in range(6):
                deviation = abs2(block[i, j]) - sixth
                if not _exact_or_tol(deviation, tolerance):
                    passed = False
                size = magnitude(deviation)
                if witness is None or size > worst:
                    worst, witness = size, {"block": name, "entry": [i, j]}
    return CheckResult(
        "modulus-pattern",
        backend,
        passed,
        worst,
        witness=None if passed else witness,
        mandatory=False,
    )


def _circular_gap(diff: Angle, targets: Sequence[Angle]) -> float:
    value = angle_radians(diff)
    gaps = []
    for target in targets:
        gap = abs(value - angle_radians(target)) % TWO_PI
        gaps.append(min(gap, TWO_PI - gap))
    return min(gaps)


def _angle_condition(
    name: str, diff: Angle, target: AngleFrac, tolerance: float, backend: Backend
) -> CheckResult:
    """|diff| = target read circularly: diff ≡ ±target (mod 2π)."""
    targets = [target, -target]
    if isinstance(diff, AngleFrac):
        passed = diff in targets
    else:
        passed = _circular_gap(diff, targets) < tolerance
    residual = 0.0 if passed and isinstance(diff, AngleFrac) else _circular_gap(diff, targets)
    return CheckResult(
        name,
        backend,
        passed,
        residual,
        witness=None if passed else {"difference": str(diff)},
        mandatory=False,
    )


def check_theta_conditions(
    params: ThetaParams, tolerance: float = DEFAULT_TOLERANCE, backend: Backend | None = None
) -> list[CheckResult]:
    """The three printed angle conditions and the unitarity ground truth.

    The printed conditions are |θ₁ - θ₂| = π/3, |θ₄ - θ₅| = π and
    e^{i(θ₁-θ₄)}e^{-iπ/3} + e^{i(θ₃-θ₆)} = 0, each read circularly. The fourth
    entry tests W†W = I directly.
    """
    chosen = resolve_backend(params.angles(), backend)
    t1, t2, t3, t4, t5, t6 = params.theta
    entries = [
        _angle_condition("theta: |θ1-θ2| = π/3", sub_angles(t1, t2), THIRD_PI, tolerance, chosen),
        _angle_condition("theta: |θ4-θ5| = π", sub_angles(t4, t5), PI, tolerance, chosen),
    ]

    relation = phase(sub_angles(sub_angles(t1, t4), THIRD_PI), chosen) + phase(
        sub_angles(t3, t6), chosen
    )
    holds = _exact_or_tol(relation, tolerance)
    entries.append(
        CheckResult(
            "theta: phase relation",
            chosen,
            holds,
            magnitude(relation),
            witness=None if holds else {"value": str(relation)},
            mandatory=False,
        )
    )

    unitary = is_unitary(build_W(params.theta, chosen), tolerance)
    entries.append(
        CheckResult(
            "unitarity (ground truth)",
            chosen,
            unitary.unitary,
            unitary.residual,
            witness=None if unitary.unitary else {"gram_entry": list(unitary.worst or (0, 0))},
            mandatory=False,
        )
    )
    return entries


def _perpendicular(z1: Scalar, z2: Scalar) -> Scalar:
    """Re(z₁·conj z₂); zero iff z₁ ⊥ z₂ as plane vectors."""
    return real_part(z1 * conj(z2))


def perpendicularity_relations(
    w: OperatorMatrix, s: OperatorMatrix, spec: FirstBasisSpec | None = None
) -> list[tuple[str, Scalar, Scalar]]:
    """Relations (label, z₁, z₂) for the computational or rotated completion pair."""
    relations = [
        ("w11⊥w22", w[0, 0], w[1, 1]),
        ("w21⊥w12", w[1, 0], w[0, 1]),
    ]
    if spec is None or spec.is_computational:
        relations += [
            ("w13·s11⊥w23·s21", w[0, 2] * s[0, 0], w[1, 2] * s[1, 0]),
            ("w23·s11⊥w13·s21", w[1, 2] * s[0, 0], w[0, 2] * s[1, 0]),
            ("w13·s12⊥w23·s22", w[0, 2] * s[0, 1], w[1, 2] * s[1, 1]),
            ("w23·s12⊥w13·s22", w[1, 2] * s[0, 1], w[0, 2] * s[1, 1]),
        ]
        return relations
    root3 = sqrt3(s.backend)
    relations += [
        ("w31⊥w32", w[2, 0], w[2, 1]),
        ("(s11+√3s12)⊥(s21+√3s22)", s[0, 0] + root3 * s[0, 1], s[1, 0] + root3 * s[1, 1]),
        ("(√3s11-s12)⊥(√3s21-s22)", root3 * s[0, 0] - s[0, 1], root3 * s[1, 0] - s[1, 1]),
    ]
    return relations


def check_perpendicularity(
    w: OperatorMatrix,
    s: OperatorMatrix,
    spec: FirstBasisSpec | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckResult:
    """z₁ ⊥ z₂ read as Re(z₁·conj z₂) = 0 for every relation of the active first basis."""
    backend = uniform_backend([w.entries[0], s.entries[0]])
    worst, witness, passed = 0.0, None, True
    for label, z1, z2 in perpendicularity_relations(w, s, spec):
        value = _perpendicular(z1, z2)
        size = magnitude(value)
        if not _exact_or_tol(value, tolerance):
            passed = False
            if witness is None or size > worst:
                worst, witness = size, label
        elif passed:
            worst = max(worst, size)
    return CheckResult(
        "perpendicularity",
        backend,
        passed,
        worst,
        witness=None if passed else {"relation": witness},
        mandatory=False,
    )


def _check_basis_unextendible(
    basis: Sequence[StateVector], config: VerifyConfig, label: str
) -> CheckResult:
    members = list(basis[:4])
    complement = ComplementSubspace.from_basis(basis)
    try:
        return check_unextendible(
            members, complement, config.grid, config.epsilon, config.refine, config.tolerance, label
        )
    except InvalidComplementError as exc:
        # Scan anyway so the failure carries a grid witness.
        scan = scan_complement(
            complement, grid=config.grid, refine=config.refine, validate=False
        )
        logger.warning(UmebEvents.CHECK_FAILED, check=f"unextendible[{label}]", error=str(exc))
        return CheckResult(
            f"unextendible[{label}]",
            complement.v1.backend,
            False,
            scan.max_min_singular,
            witness={**scan.witness, "member": exc.member, "generator": exc.generator},
            detail=f"{exc.message} (overlap {exc.residual or 0.0:.3e})",
        )


def _advisory_checks(pair: BasisPair, backend: Backend, tolerance: float) -> list[CheckResult]:
    params, spec = pair.params, pair.spec
    assert params is not None and spec is not None
    spec = spec if spec.backend is backend else spec.to_backend(backend)
    w = build_W(params.theta, backend)
    s = completion_operator(build_S(params.theta_prime, params.s_branch, backend), spec)
    return [
        *check_theta_conditions(params, tolerance, backend),
        check_perpendicularity(w, s, spec, tolerance),
        check_modulus_pattern(build_F(spec), w, s, tolerance),
    ]


def _timed(name: str, run: Any) -> Any:
    with LoggingContext(operation=f"check.{name}") as ctx:
        logger.debug(UmebEvents.CHECK_STARTED, check=name)
        result = run()
        entries = result if isinstance(result, list) else [result]
        for entry in entries:
            ctx.set_namespace("result", passed=entry.passed, residual=entry.residual)
            event = UmebEvents.CHECK_COMPLETED if entry.passed else UmebEvents.CHECK_FAILED
            logger.info(
                event,
                check=entry.name,
                backend=entry.backend.value,
                **ctx.to_log_dict(),
            )
        return result


def _run_checks(pair: BasisPair, backend: Backend, config: VerifyConfig) -> list[CheckResult]:
    tol = config.tolerance
    checks: list[CheckResult] = []
    for label, basis in (("first", pair.first), ("second", pair.second)):
        checks.append(
            _timed(
                f"orthonormal.{label}",
                lambda b=basis, tag=label: check_orthonormal(b, tol, tag),
            )
        )
        checks.append(
            _timed(
                f"max_entangled.{label}",
                lambda b=basis, tag=label: check_members_max_entangled(b, tol, tag),
            )
        )
        checks.append(
            _timed(
                f"unextendible.{label}",
                lambda b=basis, tag=label: _check_basis_unextendible(b, config, tag),
            )
        )
    checks.append(
        _timed("mutually_unbiased", lambda: check_mutually_unbiased(pair.first, pair.second, tol))
    )
    if pair.has_provenance:
        checks.extend(_timed("advisory", lambda: _advisory_checks(pair, backend, tol)))
    return checks


def _agreement(report: VerificationReport) -> CheckResult:
    exact = {c.name: c.passed for c in report.checks if c.backend is Backend.EXACT}
    floating = {c.name: c.passed for c in report.checks if c.backend is Backend.FLOAT}
    disagreements = sorted(n for n in exact.keys() & floating.keys() if exact[n] != floating[n])
    return CheckResult(
        "backend agreement",
        Backend.FLOAT,
        not disagreements,
        float(len(disagreements)),
        witness=disagreements or None,
        mandatory=False,
    )


def verify_pair(
    pair: BasisPair, config: VerifyConfig | None = None, input_hash: str | None = None
) -> VerificationReport:
    """Run every check on ``pair`` for the configured backend(s).

    Raises:
        ExactBackendUnavailableError: If the exact backend is requested for a
            pair stored with floating amplitudes
    """
    config = config or VerifyConfig()
    report = VerificationReport(input_hash=input_hash or pair_digest(pair))
    report.note(INDEX_NOTE)
    report.notes.extend(n for n in pair.notes if n not in report.notes)

    backends = config.backends_for(pair.backend)
    if Backend.EXACT in backends and pair.backend is Backend.FLOAT:
        raise ExactBackendUnavailableError(
            "pair holds floating amplitudes; the exact backend cannot verify it"
        )

    with LoggingContext(operation="verify_pair"):
        for backend in backends:
            target = pair if pair.backend is backend else pair.to_backend(backend)
            report.extend(_run_checks(target, backend, config))
        if len(backends) > 1:
            report.append(_agreement(report))
        logger.info(
            UmebEvents.VERIFY_COMPLETED,
            overall=report.overall,
            checks=len(report.checks),
            backends=[b.value for b in backends],
        )
    return report


__all__ = [
    "INDEX_NOTE",
    "CheckResult",
    "VerificationReport",
    "ComplementSubspace",
    "check_orthonormal",
    "check_max_entangled",
    "check_members_max_entangled",
    "check_unextendible",
    "check_mutually_unbiased",
    "check_modulus_pattern",
    "check_theta_conditions",
    "perpendicularity_relations",
    "check_perpendicularity",
    "verify_pair",
]
