"""
Scalar abstraction over the exact and floating backends.

A Scalar is either an exact CycloNumber or a Python ``complex`` (two 64-bit
reals). Containers never mix the two; every helper here dispatches on the
backend of its argument. Angles are kept as exact multiples of π (AngleFrac)
whenever possible and as float radians otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .cyclotomic import (
    INV_SQRT2,
    INV_SQRT3,
    INV_SQRT6,
    ONE,
    SQRT2,
    SQRT3,
    ZERO,
    CycloNumber,
    zeta_power,
)
from .events import UmebEvents
from .exceptions import BackendMismatchError, ExactBackendUnavailableError
from .log_config import get_context_logger


logger = get_context_logger("scalar")

DEFAULT_TOLERANCE = 1e-10
TWO_PI = 2.0 * math.pi

Scalar = CycloNumber | complex


class Backend(str, Enum):
    """Arithmetic backend of a scalar or container."""

    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True, order=True)
class AngleFrac:
    """An angle θ = pπ/q stored as the reduced fraction p/q, canonicalized into [0, 2π).

    >>> AngleFrac(Fraction(-1, 3))
    AngleFrac(pi_frac=Fraction(5, 3))
    """

    pi_frac: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "pi_frac", Fraction(self.pi_frac) % 2)

    @classmethod
    def of(cls, numerator: int, denominator: int = 1) -> AngleFrac:
        return cls(Fraction(numerator, denominator))

    @classmethod
    def parse(cls, text: str) -> AngleFrac:
        """Parse "p/q" (multiple of π)."""
        return cls(Fraction(text))

    @property
    def is_exact(self) -> bool:
        """True iff e^{iθ} lies in Q(ζ₂₄), i.e. the denominator divides 12."""
        return 12 % self.pi_frac.denominator == 0

    @property
    def zeta_exponent(self) -> int:
        """k with e^{iθ} = ζᵏ; ValueError when the angle is not embeddable."""
        if not self.is_exact:
            raise ValueError(f"{self} is not a multiple of π/12")
        return int(self.pi_frac * 12)

    @property
    def radians(self) -> float:
        return float(self.pi_frac) * math.pi

    def __add__(self, other: AngleFrac) -> AngleFrac:
        return AngleFrac(self.pi_frac + other.pi_frac)

    def __sub__(self, other: AngleFrac) -> AngleFrac:
        return AngleFrac(self.pi_frac - other.pi_frac)

    def __neg__(self) -> AngleFrac:
        return AngleFrac(-self.pi_frac)

    def __str__(self) -> str:
        return f"{self.pi_frac.numerator}/{self.pi_frac.denominator}π"


Angle = AngleFrac | float

PI = AngleFrac.of(1)
HALF_PI = AngleFrac.of(1, 2)
THIRD_PI = AngleFrac.of(1, 3)
TWO_THIRDS_PI = AngleFrac.of(2, 3)


def canonical_radians(value: float) -> float:
    """Reduce float radians into [0, 2π)."""
    reduced = math.fmod(value, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    return 0.0 if reduced >= TWO_PI else reduced


def angle_radians(angle: Angle) -> float:
    return angle.radians if isinstance(angle, AngleFrac) else float(angle)


def add_angles(a: Angle, b: Angle) -> Angle:
    """Sum of two angles; exact when both are exact."""
    if isinstance(a, AngleFrac) and isinstance(b, AngleFrac):
        return a + b
    return canonical_radians(angle_radians(a) + angle_radians(b))


def sub_angles(a: Angle, b: Angle) -> Angle:
    """Circular difference a - b, in [0, 2π)."""
    if isinstance(a, AngleFrac) and isinstance(b, AngleFrac):
        return a - b
    return canonical_radians(angle_radians(a) - angle_radians(b))


def angle_equals(a: Angle, b: Angle, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Circular equality; exact for two AngleFracs."""
    if isinstance(a, AngleFrac) and isinstance(b, AngleFrac):
        return a == b
    diff = canonical_radians(angle_radians(a) - angle_radians(b))
    return min(diff, TWO_PI - diff) < tolerance


def is_exact_angle(angle: Angle) -> bool:
    return isinstance(angle, AngleFrac) and angle.is_exact


def resolve_backend(angles: list[Angle], requested: Backend | None = None) -> Backend:
    """Pick the backend for a construction over the given angles.

    The exact backend is chosen when every angle embeds in Q(ζ₂₄) and the
    caller did not ask for floats.

    Raises:
        ExactBackendUnavailableError: If EXACT was requested for a non-embeddable angle
    """
    offending = next((a for a in angles if not is_exact_angle(a)), None)
    if requested is Backend.EXACT and offending is not None:
        raise ExactBackendUnavailableError(
            "exact backend requires angles that are multiples of π/12",
            angle=str(offending),
        )
    if requested is Backend.FLOAT or offending is not None:
        return Backend.FLOAT
    return Backend.EXACT


def phase(angle: Angle, backend: Backend | None = None) -> Scalar:
    """e^{iθ}.

    Exact ζᵏ when the angle is a multiple of π/12 (and floats were not
    requested), otherwise complex(cos θ, sin θ). The backend of the result is
    the fallback flag: callers inspect ``backend_of``.
    """
    if backend is not Backend.FLOAT and is_exact_angle(angle):
        assert isinstance(angle, AngleFrac)
        return zeta_power(angle.zeta_exponent)
    if backend is Backend.EXACT:
        raise ExactBackendUnavailableError(
            "angle has no exact phase in Q(ζ24)", angle=str(angle)
        )
    if isinstance(angle, AngleFrac):
        logger.debug(UmebEvents.PHASE_FLOAT_FALLBACK, angle=str(angle))
    theta = angle_radians(angle)
    return complex(math.cos(theta), math.sin(theta))


def backend_of(value: Scalar) -> Backend:
    if isinstance(value, CycloNumber):
        return Backend.EXACT
    if isinstance(value, complex | float | int):
        return Backend.FLOAT
    raise TypeError(f"not a scalar: {value!r}")


def uniform_backend(values: list[Scalar] | tuple[Scalar, ...]) -> Backend:
    """Backend shared by all values; BackendMismatchError if they disagree."""
    backends = {backend_of(v) for v in values}
    if len(backends) > 1:
        raise BackendMismatchError(
            "container mixes exact and floating scalars",
            backends=tuple(sorted(b.value for b in backends)),
        )
    return backends.pop() if backends else Backend.EXACT


def conj(value: Scalar) -> Scalar:
    if isinstance(value, CycloNumber):
        return value.conjugate()
    return complex(value).conjugate()


def abs2(value: Scalar) -> Scalar:
    """Squared modulus a·conj(a); a real-subfield element for exact inputs."""
    if isinstance(value, CycloNumber):
        return value * value.conjugate()
    z = complex(value)
    return complex(z.real * z.real + z.imag * z.imag, 0.0)


def real_part(value: Scalar) -> Scalar:
    if isinstance(value, CycloNumber):
        return value.real_part()
    return complex(complex(value).real, 0.0)


def to_complex(value: Scalar) -> complex:
    if isinstance(value, CycloNumber):
        return value.to_complex()
    return complex(value)


def magnitude(value: Scalar) -> float:
    """|value| as a float, for residual reporting."""
    return abs(to_complex(value))


def is_zero(value: Scalar, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Exact zero test, or |value| < tolerance for floats."""
    if isinstance(value, CycloNumber):
        return value.is_zero()
    return abs(complex(value)) < tolerance


def from_rational(value: int | Fraction, backend: Backend) -> Scalar:
    if backend is Backend.EXACT:
        return CycloNumber.from_rational(value)
    return complex(float(value), 0.0)


def zero(backend: Backend) -> Scalar:
    return ZERO if backend is Backend.EXACT else complex(0.0, 0.0)


def one(backend: Backend) -> Scalar:
    return ONE if backend is Backend.EXACT else complex(1.0, 0.0)


def imag_unit(backend: Backend) -> Scalar:
    return zeta_power(6) if backend is Backend.EXACT else complex(0.0, 1.0)


def sqrt2(backend: Backend) -> Scalar:
    return SQRT2 if backend is Backend.EXACT else complex(math.sqrt(2.0), 0.0)


def sqrt3(backend: Backend) -> Scalar:
    return SQRT3 if backend is Backend.EXACT else complex(math.sqrt(3.0), 0.0)


def inv_sqrt(n: int, backend: Backend) -> Scalar:
    """1/√n for n in {2, 3, 6}."""
    if backend is Backend.FLOAT:
        return complex(1.0 / math.sqrt(n), 0.0)
    exact = {2: INV_SQRT2, 3: INV_SQRT3, 6: INV_SQRT6}
    if n not in exact:
        raise ValueError(f"1/√{n} is not tabulated in Q(ζ24)")
    return exact[n]


def to_backend(value: Scalar, backend: Backend) -> Scalar:
    """Convert to the requested backend; only exact → float is possible."""
    if backend_of(value) is backend:
        return value
    if backend is Backend.FLOAT:
        return to_complex(value)
    raise BackendMismatchError(
        "floating values cannot be promoted to the exact backend",
        backends=("float", "exact"),
    )


__all__ = [
    "DEFAULT_TOLERANCE",
    "TWO_PI",
    "Scalar",
    "Backend",
    "AngleFrac",
    "Angle",
    "PI",
    "HALF_PI",
    "THIRD_PI",
    "TWO_THIRDS_PI",
    "canonical_radians",
    "angle_radians",
    "add_angles",
    "sub_angles",
    "angle_equals",
    "is_exact_angle",
    "resolve_backend",
    "phase",
    "backend_of",
    "uniform_backend",
    "conj",
    "abs2",
    "real_part",
    "to_complex",
    "magnitude",
    "is_zero",
    "from_rational",
    "zero",
    "one",
    "imag_unit",
    "sqrt2",
    "sqrt3",
    "inv_sqrt",
    "to_backend",
]
