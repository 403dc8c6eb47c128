"""
Construction of UMEB pairs in C²⊗C³.

The first basis is four Bell-type states (σᵢ⊗I₃)|φ₀⟩ plus two product
completion members c⊗|2'⟩, d⊗|2'⟩. The second basis is obtained with a local
unitary I₂⊗W on the entangled members and S⊗W on the completion members,
where W and S follow the phase templates

    W = 1/√3 [[e^{iθ₁}, e^{i(θ₂+π/2)}, e^{iθ₄}],
              [e^{iθ₂}, e^{i(θ₁+π/2)}, e^{iθ₅}],
              [e^{iθ₃}, e^{i(θ₃-π/2)}, e^{iθ₆}]]

    S = 1/√2 [[e^{iθ'₁}, e^{iθ'₂}],
              [±e^{i(θ'₁+π/2)}, ∓e^{i(θ'₂+π/2)}]]
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import ClassVar

import numpy as np

from .cyclotomic import CycloNumber, root_of_unity_exponent
from .events import UmebEvents
from .exceptions import InvalidCompletionPairError, InvalidParamsError, ShapeMismatchError
from .linalg import (
    OperatorMatrix,
    StateVector,
    adjoint,
    apply,
    bell_state,
    is_unitary,
    kron,
    matmul,
    pauli,
)
from .log_config import get_context_logger
from .scalar import (
    DEFAULT_TOLERANCE,
    HALF_PI,
    PI,
    THIRD_PI,
    TWO_THIRDS_PI,
    Angle,
    AngleFrac,
    Backend,
    Scalar,
    abs2,
    add_angles,
    angle_equals,
    angle_radians,
    canonical_radians,
    conj,
    from_rational,
    inv_sqrt,
    is_zero,
    one,
    phase,
    resolve_backend,
    sqrt2,
    sqrt3,
    sub_angles,
    to_backend,
    to_complex,
    uniform_backend,
    zero,
)


logger = get_context_logger("construct")

ENTANGLED_ROLE = "maximally-entangled member"
COMPLETION_ROLE = "completion"
MEMBER_ROLES: tuple[str, ...] = (ENTANGLED_ROLE,) * 4 + (COMPLETION_ROLE,) * 2


class Sign(str, Enum):
    """Sign branch of a ± template row."""

    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> int:
        return 1 if self is Sign.PLUS else -1


def _canonical(angle: Angle) -> Angle:
    if isinstance(angle, AngleFrac):
        return angle
    return canonical_radians(float(angle))


@dataclass(frozen=True)
class ThetaParams:
    """Angles of the W and S templates.

    ``theta`` holds θ₁…θ₆, ``theta_prime`` holds θ'₁, θ'₂ and ``s_branch``
    picks the upper (+) or lower (-) sign row of the S template. Angles are
    AngleFracs when they are exact multiples of π, float radians otherwise.
    """

    theta: tuple[Angle, ...]
    theta_prime: tuple[Angle, ...] = (AngleFrac.of(0), AngleFrac.of(0))
    s_branch: Sign = Sign.PLUS

    def __post_init__(self) -> None:
        if len(self.theta) != 6 or len(self.theta_prime) != 2:
            raise InvalidParamsError(
                "ThetaParams needs 6 theta and 2 theta_prime angles",
                residual=None,
            )
        object.__setattr__(self, "theta", tuple(_canonical(a) for a in self.theta))
        object.__setattr__(self, "theta_prime", tuple(_canonical(a) for a in self.theta_prime))
        object.__setattr__(self, "s_branch", Sign(self.s_branch))

    @classmethod
    def from_pi_fracs(
        cls,
        theta: Sequence[str | int | Fraction],
        theta_prime: Sequence[str | int | Fraction] = (0, 0),
        s_branch: Sign | str = Sign.PLUS,
    ) -> ThetaParams:
        """Build from multiples of π, e.g. ``["0", "1/3", "0", "1", "0", "1/3"]``."""
        return cls(
            tuple(AngleFrac(Fraction(t)) for t in theta),
            tuple(AngleFrac(Fraction(t)) for t in theta_prime),
            Sign(s_branch),
        )

    def angles(self) -> list[Angle]:
        return [*self.theta, *self.theta_prime]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(a, AngleFrac) and a.is_exact for a in self.angles())

    def with_theta(self, index: int, angle: Angle) -> ThetaParams:
        """Copy with θ_{index+1} replaced."""
        theta = list(self.theta)
        theta[index] = angle
        return ThetaParams(tuple(theta), self.theta_prime, self.s_branch)

    def perturbed(self, index: int, delta: float) -> ThetaParams:
        """Copy with θ_{index+1} shifted by ``delta`` radians (always a float angle)."""
        return self.with_theta(index, angle_radians(self.theta[index]) + delta)


@dataclass(frozen=True)
class FirstBasisSpec:
    """The completion pair (c, d) of the first basis, two orthonormal vectors of C²."""

    name: str
    c: tuple[Scalar, Scalar]
    d: tuple[Scalar, Scalar]

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "d", tuple(self.d))
        if len(self.c) != 2 or len(self.d) != 2:
            raise InvalidCompletionPairError("completion vectors must lie in C2")
        backend = uniform_backend([*self.c, *self.d])
        tolerance = DEFAULT_TOLERANCE
        norm_c = abs2(self.c[0]) + abs2(self.c[1]) - one(backend)
        norm_d = abs2(self.d[0]) + abs2(self.d[1]) - one(backend)
        overlap = conj(self.c[0]) * self.d[0] + conj(self.c[1]) * self.d[1]
        for label, value in (("|c|", norm_c), ("|d|", norm_d), ("<c|d>", overlap)):
            if not is_zero(value, tolerance):
                raise InvalidCompletionPairError(
                    f"completion pair is not orthonormal ({label})",
                    residual=abs(to_complex(value)),
                )

    @classmethod
    def default(cls, backend: Backend = Backend.EXACT) -> FirstBasisSpec:
        """c = |0⟩, d = |1⟩."""
        o, z = one(backend), zero(backend)
        return cls("default", (o, z), (z, o))

    @classmethod
    def rotated(cls, backend: Backend = Backend.EXACT) -> FirstBasisSpec:
        """c = ½|0⟩ + (√3/2)|1⟩, d = (√3/2)|0⟩ - ½|1⟩."""
        half = from_rational(Fraction(1, 2), backend)
        root = sqrt3(backend) * half
        return cls("rotated", (half, root), (root, -half))

    @classmethod
    def by_name(cls, name: str, backend: Backend = Backend.EXACT) -> FirstBasisSpec:
        factories = {"default": cls.default, "rotated": cls.rotated}
        if name not in factories:
            raise InvalidCompletionPairError(
                f"unknown first basis '{name}'", residual=None
            )
        return factories[name](backend)

    @property
    def backend(self) -> Backend:
        return uniform_backend([*self.c, *self.d])

    @property
    def is_computational(self) -> bool:
        """True when (c, d) = (|0⟩, |1⟩), so the completion operator is S itself."""
        b = self.backend
        return all(
            is_zero(x - y)
            for x, y in zip((*self.c, *self.d), (one(b), zero(b), zero(b), one(b)), strict=True)
        )

    def to_backend(self, backend: Backend) -> FirstBasisSpec:
        return FirstBasisSpec(
            self.name,
            tuple(to_backend(x, backend) for x in self.c),  # type: ignore[arg-type]
            tuple(to_backend(x, backend) for x in self.d),  # type: ignore[arg-type]
        )

    def completion_matrix(self) -> OperatorMatrix:
        """V = [c d], the unitary taking (|0⟩, |1⟩) to (c, d)."""
        return OperatorMatrix.from_columns([self.c, self.d])


@dataclass(frozen=True)
class BasisPair:
    """Two ordered bases of C²⊗C³; positions 0–3 are entangled members, 4–5 completions."""

    first: tuple[StateVector, ...]
    second: tuple[StateVector, ...]
    params: ThetaParams | None = None
    spec: FirstBasisSpec | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    member_roles: ClassVar[tuple[str, ...]] = MEMBER_ROLES

    def __post_init__(self) -> None:
        object.__setattr__(self, "first", tuple(self.first))
        object.__setattr__(self, "second", tuple(self.second))
        if len(self.first) != 6 or len(self.second) != 6:
            raise ShapeMismatchError(
                "a basis pair holds two lists of 6 states",
                operation="BasisPair",
                shapes=(len(self.first), len(self.second)),
            )
        uniform_backend([s.amplitudes[0] for s in (*self.first, *self.second)])

    @property
    def backend(self) -> Backend:
        return self.first[0].backend

    @property
    def has_provenance(self) -> bool:
        return self.params is not None and self.spec is not None

    def to_backend(self, backend: Backend) -> BasisPair:
        return BasisPair(
            tuple(s.to_backend(backend) for s in self.first),
            tuple(s.to_backend(backend) for s in self.second),
            self.params,
            self.spec.to_backend(backend) if self.spec is not None else None,
            self.notes,
        )


def build_first_basis(spec: FirstBasisSpec) -> tuple[StateVector, ...]:
    """φ₀…φ₃ = (σᵢ⊗I₃)(|00'⟩ + |11'⟩)/√2, φ₄ = c⊗|2'⟩, φ₅ = d⊗|2'⟩."""
    backend = spec.backend
    phi0 = bell_state(backend)
    identity3 = OperatorMatrix.identity(3, backend)
    members = [apply(kron(pauli(k, backend), identity3), phi0) for k in range(4)]
    two_prime = (zero(backend), zero(backend), one(backend))
    members.append(StateVector.product(spec.c, two_prime))
    members.append(StateVector.product(spec.d, two_prime))
    logger.debug(UmebEvents.BASIS_CONSTRUCTED, spec=spec.name, backend=backend.value)
    return tuple(members)


def build_F(spec: FirstBasisSpec) -> OperatorMatrix:
    """Change-of-basis matrix whose columns are the first-basis members."""
    return OperatorMatrix.from_columns([m.amplitudes for m in build_first_basis(spec)])


def _template_backend(angles: Sequence[Angle], backend: Backend | None) -> Backend:
    return resolve_backend(list(angles), backend)


def build_W(theta: Sequence[Angle], backend: Backend | None = None) -> OperatorMatrix:
    """The 3×3 W template for θ₁…θ₆ (validity is checked separately)."""
    if len(theta) != 6:
        raise ShapeMismatchError("W needs six angles", operation="build_W", shapes=(len(theta),))
    chosen = _template_backend(theta, backend)
    t1, t2, t3, t4, t5, t6 = theta
    angles = (
        (t1, add_angles(t2, HALF_PI), t4),
        (t2, add_angles(t1, HALF_PI), t5),
        (t3, sub_angles(t3, HALF_PI), t6),
    )
    scale = inv_sqrt(3, chosen)
    return OperatorMatrix.from_rows(
        [[scale * phase(a, chosen) for a in row] for row in angles]
    )


def build_S(
    theta_prime: Sequence[Angle], branch: Sign = Sign.PLUS, backend: Backend | None = None
) -> OperatorMatrix:
    """The 2×2 S template; unitary for every input."""
    if len(theta_prime) != 2:
        raise ShapeMismatchError(
            "S needs two angles", operation="build_S", shapes=(len(theta_prime),)
        )
    chosen = _template_backend(theta_prime, backend)
    p1, p2 = theta_prime
    sign = from_rational(Sign(branch).factor, chosen)
    scale = inv_sqrt(2, chosen)
    return OperatorMatrix.from_rows(
        [
            [scale * phase(p1, chosen), scale * phase(p2, chosen)],
            [
                scale * sign * phase(add_angles(p1, HALF_PI), chosen),
                -scale * sign * phase(add_angles(p2, HALF_PI), chosen),
            ],
        ]
    )


def completion_operator(s_template: OperatorMatrix, spec: FirstBasisSpec) -> OperatorMatrix:
    """S·V† with V = [c d]: maps c ↦ S|0⟩ and d ↦ S|1⟩.

    For the computational completion pair this is the template itself.
    """
    if spec.is_computational:
        return s_template
    v = spec.to_backend(s_template.backend).completion_matrix()
    return matmul(s_template, adjoint(v))


def build_second_basis(
    first: Sequence[StateVector], w: OperatorMatrix, s: OperatorMatrix
) -> tuple[StateVector, ...]:
    """ψⱼ = (I₂⊗W)φⱼ for j = 0..3 and ψⱼ = (S⊗W)φⱼ for j = 4, 5."""
    if len(first) != 6:
        raise ShapeMismatchError(
            "first basis must hold 6 states", operation="build_second_basis", shapes=(len(first),)
        )
    if w.shape != (3, 3) or s.shape != (2, 2):
        raise ShapeMismatchError(
            "W must be 3x3 and S 2x2", operation="build_second_basis", shapes=(w.shape, s.shape)
        )
    backend = uniform_backend([first[0].amplitudes[0], w.entries[0], s.entries[0]])
    entangled_op = kron(OperatorMatrix.identity(2, backend), w)
    completion_op = kron(s, w)
    return tuple(
        apply(entangled_op if j < 4 else completion_op, state) for j, state in enumerate(first)
    )


def unitarity_closure(
    theta1: Angle, theta3: Angle, theta4: Angle, branch: Sign = Sign.PLUS
) -> tuple[Angle, ...]:
    """Complete (θ₁, θ₃, θ₄) to six angles for which W is unitary.

    θ₂ = θ₁ ± π/3, θ₅ = θ₄ + π, θ₆ = θ₃ + θ₄ - θ₁ ∓ 2π/3 (upper signs on the + branch).

    >>> unitarity_closure(AngleFrac.of(0), AngleFrac.of(0), AngleFrac.of(1))[5]
    AngleFrac(pi_frac=Fraction(1, 3))
    """
    plus = Sign(branch) is Sign.PLUS
    theta2 = add_angles(theta1, THIRD_PI) if plus else sub_angles(theta1, THIRD_PI)
    theta5 = add_angles(theta4, PI)
    base = sub_angles(add_angles(theta3, theta4), theta1)
    theta6 = sub_angles(base, TWO_THIRDS_PI) if plus else add_angles(base, TWO_THIRDS_PI)
    return (_canonical(theta1), theta2, _canonical(theta3), _canonical(theta4), theta5, theta6)


def resolve_w_branch(theta: Sequence[Angle], tolerance: float = DEFAULT_TOLERANCE) -> Sign | None:
    """Closure branch a θ set lies on (θ₂ = θ₁ ± π/3), or None."""
    diff = sub_angles(theta[1], theta[0])
    if angle_equals(diff, THIRD_PI, tolerance):
        return Sign.PLUS
    if angle_equals(diff, -THIRD_PI, tolerance):
        return Sign.MINUS
    return None


def closure_prediction(theta: Sequence[Angle]) -> tuple[Angle, ...] | None:
    """The closure completion of (θ₁, θ₃, θ₄) on the branch θ already uses, if any."""
    branch = resolve_w_branch(theta)
    if branch is None:
        return None
    return unitarity_closure(theta[0], theta[2], theta[3], branch)


def _phase_angle(value: Scalar, tolerance: float) -> Angle | None:
    """θ with value = e^{iθ}, exact when value is a 24th root of unity."""
    if isinstance(value, CycloNumber):
        k = root_of_unity_exponent(value)
        return AngleFrac.of(k, 12) if k is not None else None
    z = to_complex(value)
    if abs(abs(z) - 1.0) > tolerance:
        return None
    return canonical_radians(math.atan2(z.imag, z.real))


def resolve_s_template(
    printed: OperatorMatrix, spec: FirstBasisSpec, tolerance: float = DEFAULT_TOLERANCE
) -> tuple[tuple[Angle, Angle], Sign] | None:
    """Recover (θ'₁, θ'₂) and the sign branch from a completion operator.

    ``printed`` is treated as S·V† (see completion_operator); the template is
    S = printed·V. Returns None when no template branch reproduces it.
    """
    backend = printed.backend
    v = spec.to_backend(backend).completion_matrix()
    template = printed if spec.is_computational else matmul(printed, v)
    root2 = sqrt2(backend)
    p1 = _phase_angle(root2 * template[0, 0], tolerance)
    p2 = _phase_angle(root2 * template[0, 1], tolerance)
    if p1 is None or p2 is None:
        return None
    for branch in (Sign.PLUS, Sign.MINUS):
        candidate = build_S((p1, p2), branch, backend)
        if candidate.equals(template, tolerance):
            return (p1, p2), branch
    return None


def _sample_one(seed_seq: np.random.SeedSequence, backend: Backend) -> ThetaParams:
    rng = np.random.default_rng(seed_seq)
    if backend is Backend.EXACT:
        free: list[Angle] = [AngleFrac.of(int(k), 12) for k in rng.integers(0, 24, size=5)]
    else:
        free = [float(x) for x in rng.uniform(0.0, 2.0 * math.pi, size=5)]
    w_branch = Sign.PLUS if rng.integers(0, 2) == 0 else Sign.MINUS
    s_branch = Sign.PLUS if rng.integers(0, 2) == 0 else Sign.MINUS
    theta1, theta3, theta4, prime1, prime2 = free
    theta = unitarity_closure(theta1, theta3, theta4, w_branch)
    return ThetaParams(theta, (prime1, prime2), s_branch)


def sample_valid_params(
    seed: int,
    count: int,
    backend: Backend = Backend.FLOAT,
    workers: int = 1,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[ThetaParams]:
    """Draw ``count`` closure-valid parameter sets.

    Free angles θ₁, θ₃, θ₄, θ'₁, θ'₂ are uniform on [0, 2π) (float backend) or
    uniform over multiples of π/12 (exact backend); both sign branches are
    drawn at random. Each sample gets an independent PRNG stream spawned from
    ``seed``, so the result does not depend on ``workers``.

    Raises:
        ValueError: If count < 1
        InvalidParamsError: If a sample fails the unitarity check
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    streams = np.random.SeedSequence(seed).spawn(count)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            samples = list(pool.map(lambda s: _sample_one(s, backend), streams))
    else:
        samples = [_sample_one(s, backend) for s in streams]

    for index, params in enumerate(samples):
        result = is_unitary(build_W(params.theta, backend), tolerance)
        if not result:
            logger.warning(UmebEvents.PARAMS_REJECTED, index=index, residual=result.residual)
            raise InvalidParamsError(
                "closure produced a non-unitary W", residual=result.residual
            )
    logger.debug(UmebEvents.PARAMS_SAMPLED, seed=seed, count=count, backend=backend.value)
    return samples


def construct_pair(
    params: ThetaParams,
    spec: FirstBasisSpec | None = None,
    backend: Backend | None = None,
    unchecked: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> BasisPair:
    """Build the first basis for ``spec`` and its partner basis from ``params``.

    Raises:
        InvalidParamsError: If W is not unitary and ``unchecked`` is false
        ExactBackendUnavailableError: If EXACT is forced on non-π/12 angles
    """
    spec = spec or FirstBasisSpec.default()
    chosen = resolve_backend(params.angles(), backend)
    if spec.backend is not chosen:
        spec = spec.to_backend(chosen)

    w = build_W(params.theta, chosen)
    s = build_S(params.theta_prime, params.s_branch, chosen)
    check = is_unitary(w, tolerance)
    if not check and not unchecked:
        raise InvalidParamsError(
            "W is not unitary for these angles", residual=check.residual
        )

    first = build_first_basis(spec)
    second = build_second_basis(first, w, completion_operator(s, spec))
    logger.info(
        UmebEvents.PAIR_CONSTRUCTED,
        spec=spec.name,
        backend=chosen.value,
        w_unitary=check.unitary,
    )
    return BasisPair(first, second, params, spec)


def construct_from_operators(
    spec: FirstBasisSpec, w: OperatorMatrix, s: OperatorMatrix
) -> BasisPair:
    """Pair built from arbitrary W and S (no template, no provenance angles)."""
    spec = spec.to_backend(w.backend) if spec.backend is not w.backend else spec
    first = build_first_basis(spec)
    second = build_second_basis(first, w, completion_operator(s, spec))
    return BasisPair(first, second, None, spec)


__all__ = [
    "MEMBER_ROLES",
    "Sign",
    "ThetaParams",
    "FirstBasisSpec",
    "BasisPair",
    "build_first_basis",
    "build_F",
    "build_W",
    "build_S",
    "completion_operator",
    "build_second_basis",
    "unitarity_closure",
    "resolve_w_branch",
    "closure_prediction",
    "resolve_s_template",
    "sample_valid_params",
    "construct_pair",
    "construct_from_operators",
]
