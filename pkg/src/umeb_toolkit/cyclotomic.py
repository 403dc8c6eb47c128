"""
Exact arithmetic in the cyclotomic field Q(ζ₂₄).

An element is stored as its 8 rational coordinates over the power basis
{1, ζ, ..., ζ⁷} of Q[x]/(Φ₂₄), with Φ₂₄(x) = x⁸ - x⁴ + 1 and ζ = e^{iπ/12}.
Every value handled here is fully reduced, so two elements are equal exactly
when their coordinate tuples are equal.

The field contains i = ζ⁶, √2 = ζ³ + ζ⁻³ and √3 = ζ² + ζ⁻², hence every phase
e^{ikπ/12} together with 1/√2, 1/√3 and 1/√6.

    >>> (SQRT2 * SQRT2) == 2
    True
    >>> zeta_power(6) * zeta_power(6) == -1
    True
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import lru_cache

from .exceptions import BackendMismatchError, CycloDivisionByZeroError


RationalLike = int | Fraction

DEGREE = 8
ORDER = 24

# Φ₂₄, lowest degree first.
PHI24: tuple[Fraction, ...] = tuple(Fraction(c) for c in (1, 0, 0, 0, -1, 0, 0, 0, 1))

_ZERO = Fraction(0)


def _reduce(coeffs: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """Reduce a coefficient list modulo Φ₂₄ using x⁸ = x⁴ - 1."""
    work = [Fraction(c) for c in coeffs]
    if len(work) < DEGREE:
        work.extend([_ZERO] * (DEGREE - len(work)))
    for d in range(len(work) - 1, DEGREE - 1, -1):
        c = work[d]
        if c:
            work[d - 4] += c
            work[d - 8] -= c
    return tuple(work[:DEGREE])


# Dense polynomial helpers over Q, lowest degree first, no trailing zeros.


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [
        (a[k] if k < len(a) else _ZERO) - (b[k] if k < len(b) else _ZERO) for k in range(n)
    ]
    return _trim(out)


def _poly_divmod(
    n: Sequence[Fraction], d: Sequence[Fraction]
) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder of n / d over Q; d must be nonzero."""
    rem = list(n)
    if len(rem) < len(d):
        return [], _trim(rem)
    quo = [_ZERO] * (len(rem) - len(d) + 1)
    lead = d[-1]
    while len(rem) >= len(d) and rem:
        shift = len(rem) - len(d)
        t = rem[-1] / lead
        quo[shift] = t
        for k, c in enumerate(d):
            rem[shift + k] -= t * c
        _trim(rem)
    return _trim(quo), rem


class CycloNumber:
    """An exact element of Q(ζ₂₄).

    Instances are immutable and hashable. Arithmetic accepts other
    CycloNumbers, ints and Fractions; floats and complex numbers are refused
    with BackendMismatchError so the exact and floating backends never mix.
    """

    __slots__ = ("_coeffs",)

    _coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        object.__setattr__(self, "_coeffs", _reduce(list(coeffs)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("CycloNumber is immutable")

    @classmethod
    def from_rational(cls, value: RationalLike) -> CycloNumber:
        """Embed a rational number."""
        return cls((Fraction(value),))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Coordinates over {1, ζ, ..., ζ⁷}."""
        return self._coeffs

    def _coerce(self, other: object) -> CycloNumber | None:
        if isinstance(other, CycloNumber):
            return other
        if isinstance(other, int | Fraction):
            return CycloNumber.from_rational(other)
        if isinstance(other, float | complex):
            raise BackendMismatchError(
                "cannot combine an exact value with a floating value",
                backends=("exact", "float"),
            )
        return None

    def __add__(self, other: object) -> CycloNumber:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return CycloNumber(a + b for a, b in zip(self._coeffs, rhs._coeffs, strict=True))

    __radd__ = __add__

    def __neg__(self) -> CycloNumber:
        return CycloNumber(-a for a in self._coeffs)

    def __sub__(self, other: object) -> CycloNumber:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return CycloNumber(a - b for a, b in zip(self._coeffs, rhs._coeffs, strict=True))

    def __rsub__(self, other: object) -> CycloNumber:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> CycloNumber:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_rational():
            scale = rhs._coeffs[0]
            return CycloNumber(a * scale for a in self._coeffs)
        product = [_ZERO] * (2 * DEGREE - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(rhs._coeffs):
                if b:
                    product[i + j] += a * b
        return CycloNumber(product)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> CycloNumber:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: object) -> CycloNumber:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs * self.inverse()

    def __pow__(self, exponent: int) -> CycloNumber:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloNumber):
            return self._coeffs == other._coeffs
        if isinstance(other, int | Fraction):
            return self._coeffs == CycloNumber.from_rational(other)._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return self.to_complex()

    def __repr__(self) -> str:
        return f"CycloNumber({[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            power = "" if k == 0 else ("ζ" if k == 1 else f"ζ^{k}")
            if not power:
                terms.append(str(c))
            elif c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f"-{power}")
            else:
                terms.append(f"{c}·{power}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_rational(self) -> bool:
        return not any(self._coeffs[1:])

    def rational_value(self) -> Fraction:
        """The rational this element equals; ValueError if it is not rational."""
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        return self._coeffs[0]

    def is_real(self) -> bool:
        """True iff the element lies in the real subfield Q(ζ₂₄ + ζ₂₄⁻¹)."""
        return self == self.conjugate()

    def conjugate(self) -> CycloNumber:
        """Complex conjugation, ζᵏ ↦ ζ²⁴⁻ᵏ."""
        result = [_ZERO] * DEGREE
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            for j, z in enumerate(_zeta_power_coeffs(-k)):
                if z:
                    result[j] += c * z
        return CycloNumber(result)

    def real_part(self) -> CycloNumber:
        return (self + self.conjugate()) * Fraction(1, 2)

    def inverse(self) -> CycloNumber:
        """Multiplicative inverse via extended Euclid against Φ₂₄.

        Raises:
            CycloDivisionByZeroError: If the element is zero
        """
        if self.is_zero():
            raise CycloDivisionByZeroError("inverse of zero in Q(ζ24)")
        if self.is_rational():
            return CycloNumber.from_rational(1 / self._coeffs[0])

        # Invariant: r_k ≡ s_k · self (mod Φ₂₄).
        r0, r1 = list(PHI24), _trim(list(self._coeffs))
        s0: list[Fraction] = []
        s1: list[Fraction] = [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # Φ₂₄ is irreducible, so the gcd r0 is a nonzero constant.
        gcd = r0[0]
        return CycloNumber(c / gcd for c in s0)

    def to_complex(self) -> complex:
        """Evaluate at ζ = e^{iπ/12}."""
        return sum(
            (float(c) * _ZETA_COMPLEX[k] for k, c in enumerate(self._coeffs) if c),
            complex(0.0, 0.0),
        )


_ZETA_COMPLEX: tuple[complex, ...] = tuple(
    cmath.exp(1j * math.pi * k / 12) for k in range(DEGREE)
)


@lru_cache(maxsize=ORDER)
def _zeta_power_coeffs(k: int) -> tuple[Fraction, ...]:
    k %= ORDER
    coeffs = [_ZERO] * (k + 1)
    coeffs[k] = Fraction(1)
    return _reduce(coeffs)


def zeta_power(k: int) -> CycloNumber:
    """ζᵏ for any integer k."""
    return CycloNumber(_zeta_power_coeffs(k))


def root_of_unity_exponent(value: CycloNumber) -> int | None:
    """The k in [0, 24) with ζᵏ == value, or None if value is not a 24th root of unity."""
    for k in range(ORDER):
        if value.coeffs == _zeta_power_coeffs(k):
            return k
    return None


def cyclo_mul(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    """Product reduced modulo Φ₂₄."""
    return a * b


def cyclo_inv(a: CycloNumber) -> CycloNumber:
    """Exact inverse; CycloDivisionByZeroError for zero."""
    return a.inverse()


def cyclo_conj(a: CycloNumber) -> CycloNumber:
    """Complex conjugate."""
    return a.conjugate()


ZERO = CycloNumber()
ONE = CycloNumber.from_rational(1)
IMAG_UNIT = zeta_power(6)
SQRT2 = zeta_power(3) + zeta_power(21)
SQRT3 = zeta_power(2) + zeta_power(22)
SQRT6 = SQRT2 * SQRT3
INV_SQRT2 = SQRT2 * Fraction(1, 2)
INV_SQRT3 = SQRT3 * Fraction(1, 3)
INV_SQRT6 = SQRT6 * Fraction(1, 6)


__all__ = [
    "CycloNumber",
    "PHI24",
    "zeta_power",
    "root_of_unity_exponent",
    "cyclo_mul",
    "cyclo_inv",
    "cyclo_conj",
    "ZERO",
    "ONE",
    "IMAG_UNIT",
    "SQRT2",
    "SQRT3",
    "SQRT6",
    "INV_SQRT2",
    "INV_SQRT3",
    "INV_SQRT6",
]
