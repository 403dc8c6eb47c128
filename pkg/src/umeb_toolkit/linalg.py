"""
Dense complex matrices and states of C²⊗C³ over the Scalar abstraction.

States are ordered in the computational product basis
|00'⟩, |01'⟩, |02'⟩, |10'⟩, |11'⟩, |12'⟩, i.e. index = 3·a + b, which is the
row-major layout produced by ``kron`` of a C² factor with a C³ factor.
"""

from __future__ import annotations

import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

import numpy as np

from .exceptions import ShapeMismatchError
from .scalar import (
    DEFAULT_TOLERANCE,
    Backend,
    Scalar,
    abs2,
    conj,
    from_rational,
    imag_unit,
    inv_sqrt,
    is_zero,
    magnitude,
    one,
    to_backend,
    to_complex,
    uniform_backend,
    zero,
)


DIM_A = 2
DIM_B = 3
STATE_DIM = DIM_A * DIM_B
STATE_ORDERING = "row-major A⊗B"


def _sum(values: Sequence[Scalar], backend: Backend) -> Scalar:
    total = zero(backend)
    for v in values:
        total = total + v
    return total


@dataclass(frozen=True)
class OperatorMatrix:
    """A small dense matrix with row-major Scalar entries of one backend."""

    rows: int
    cols: int
    entries: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.rows <= 0 or self.cols <= 0 or len(self.entries) != self.rows * self.cols:
            raise ShapeMismatchError(
                "entry count does not match shape",
                operation="OperatorMatrix",
                shapes=((self.rows, self.cols), len(self.entries)),
            )
        uniform_backend(self.entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> OperatorMatrix:
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ShapeMismatchError("ragged rows", operation="from_rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> OperatorMatrix:
        height = len(columns[0]) if columns else 0
        if any(len(c) != height for c in columns):
            raise ShapeMismatchError("ragged columns", operation="from_columns")
        return cls(
            height,
            len(columns),
            tuple(columns[j][i] for i in range(height) for j in range(len(columns))),
        )

    @classmethod
    def identity(cls, n: int, backend: Backend = Backend.EXACT) -> OperatorMatrix:
        return cls(
            n, n, tuple(one(backend) if i == j else zero(backend) for i in range(n) for j in range(n))
        )

    @property
    def backend(self) -> Backend:
        return uniform_backend(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def scale(self, factor: Scalar) -> OperatorMatrix:
        return OperatorMatrix(self.rows, self.cols, tuple(factor * x for x in self.entries))

    def __matmul__(self, other: OperatorMatrix) -> OperatorMatrix:
        return matmul(self, other)

    def to_backend(self, backend: Backend) -> OperatorMatrix:
        return OperatorMatrix(self.rows, self.cols, tuple(to_backend(x, backend) for x in self.entries))

    def to_float(self) -> OperatorMatrix:
        return self.to_backend(Backend.FLOAT)

    def to_numpy(self) -> np.ndarray:
        return np.array([to_complex(x) for x in self.entries], dtype=np.complex128).reshape(
            self.rows, self.cols
        )

    def max_deviation(self, other: OperatorMatrix) -> tuple[float, tuple[int, int] | None]:
        """Largest |self - other| entry and its (row, col); (0.0, None) when equal."""
        if self.shape != other.shape:
            raise ShapeMismatchError(
                "cannot compare matrices", operation="max_deviation", shapes=(self.shape, other.shape)
            )
        worst, where = 0.0, None
        for k, (a, b) in enumerate(zip(self.entries, other.entries, strict=True)):
            diff = a - b
            if diff == 0:
                continue
            size = magnitude(diff)
            if where is None or size > worst:
                worst, where = size, divmod(k, self.cols)
        return worst, where

    def equals(self, other: OperatorMatrix, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        if self.shape != other.shape:
            return False
        return all(is_zero(a - b, tolerance) for a, b in zip(self.entries, other.entries, strict=True))


@dataclass(frozen=True)
class StateVector:
    """A state of C²⊗C³: 6 amplitudes in the computational product basis."""

    amplitudes: tuple[Scalar, ...]

    DIM: ClassVar[int] = STATE_DIM

    def __post_init__(self) -> None:
        object.__setattr__(self, "amplitudes", tuple(self.amplitudes))
        if len(self.amplitudes) != STATE_DIM:
            raise ShapeMismatchError(
                "a state of C2⊗C3 has 6 amplitudes",
                operation="StateVector",
                shapes=(len(self.amplitudes),),
            )
        uniform_backend(self.amplitudes)

    @classmethod
    def basis(cls, a: int, b: int, backend: Backend = Backend.EXACT) -> StateVector:
        """|a⟩⊗|b'⟩."""
        index = DIM_B * a + b
        return cls(tuple(one(backend) if k == index else zero(backend) for k in range(STATE_DIM)))

    @classmethod
    def product(cls, u: Sequence[Scalar], v: Sequence[Scalar]) -> StateVector:
        """|u⟩⊗|v⟩ for u ∈ C², v ∈ C³."""
        if len(u) != DIM_A or len(v) != DIM_B:
            raise ShapeMismatchError(
                "product needs a C2 and a C3 factor", operation="product", shapes=(len(u), len(v))
            )
        return cls(tuple(x * y for x in u for y in v))

    @property
    def backend(self) -> Backend:
        return uniform_backend(self.amplitudes)

    def __getitem__(self, index: int) -> Scalar:
        return self.amplitudes[index]

    def __len__(self) -> int:
        return STATE_DIM

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.amplitudes)

    def __add__(self, other: StateVector) -> StateVector:
        return StateVector(tuple(a + b for a, b in zip(self.amplitudes, other.amplitudes, strict=True)))

    def scale(self, factor: Scalar) -> StateVector:
        return StateVector(tuple(factor * a for a in self.amplitudes))

    def norm2(self) -> Scalar:
        return _sum([abs2(a) for a in self.amplitudes], self.backend)

    def is_normalized(self, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        return is_zero(self.norm2() - one(self.backend), tolerance)

    def to_backend(self, backend: Backend) -> StateVector:
        return StateVector(tuple(to_backend(a, backend) for a in self.amplitudes))

    def to_float(self) -> StateVector:
        return self.to_backend(Backend.FLOAT)

    def to_numpy(self) -> np.ndarray:
        return np.array([to_complex(a) for a in self.amplitudes], dtype=np.complex128)

    def equals(self, other: StateVector, tolerance: float = DEFAULT_TOLERANCE) -> bool:
        return all(
            is_zero(a - b, tolerance) for a, b in zip(self.amplitudes, other.amplitudes, strict=True)
        )


@dataclass(frozen=True)
class SchmidtProfile:
    """Schmidt analysis of a state of C²⊗C³.

    ``coefficients`` are the two singular values of the 2×3 coefficient matrix
    in descending order. ``maximally_entangled`` is decided by MM† = I₂/2,
    exactly in the exact backend, and ``residual`` is the largest entry of
    |MM† - I₂/2|.
    """

    coefficients: tuple[float, float]
    rank: int
    maximally_entangled: bool
    residual: float
    backend: Backend


@dataclass(frozen=True)
class UnitarityResult:
    """Outcome of a unitarity test; truthy iff unitary."""

    unitary: bool
    residual: float
    worst: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.unitary


def matmul(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    if a.cols != b.rows:
        raise ShapeMismatchError("inner dimensions differ", operation="matmul", shapes=(a.shape, b.shape))
    backend = uniform_backend([a.entries[0], b.entries[0]])
    entries = [
        _sum([a[i, k] * b[k, j] for k in range(a.cols)], backend)
        for i in range(a.rows)
        for j in range(b.cols)
    ]
    return OperatorMatrix(a.rows, b.cols, tuple(entries))


def adjoint(a: OperatorMatrix) -> OperatorMatrix:
    return OperatorMatrix(
        a.cols, a.rows, tuple(conj(a[i, j]) for j in range(a.cols) for i in range(a.rows))
    )


def kron(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    uniform_backend([a.entries[0], b.entries[0]])
    rows, cols = a.rows * b.rows, a.cols * b.cols
    entries = [
        a[i // b.rows, j // b.cols] * b[i % b.rows, j % b.cols]
        for i in range(rows)
        for j in range(cols)
    ]
    return OperatorMatrix(rows, cols, tuple(entries))


def apply(op: OperatorMatrix, state: StateVector) -> StateVector:
    """op|state⟩ for a 6×6 operator."""
    if op.shape != (STATE_DIM, STATE_DIM):
        raise ShapeMismatchError("operator must be 6x6", operation="apply", shapes=(op.shape,))
    backend = uniform_backend([op.entries[0], state.amplitudes[0]])
    return StateVector(
        tuple(_sum([op[i, k] * state[k] for k in range(STATE_DIM)], backend) for i in range(STATE_DIM))
    )


def inner(u: StateVector, v: StateVector) -> Scalar:
    """⟨u|v⟩, antilinear in the first argument."""
    backend = uniform_backend([u.amplitudes[0], v.amplitudes[0]])
    return _sum([conj(x) * y for x, y in zip(u.amplitudes, v.amplitudes, strict=True)], backend)


def gram(states: Sequence[StateVector]) -> OperatorMatrix:
    """G[i, j] = ⟨states[i]|states[j]⟩."""
    n = len(states)
    return OperatorMatrix(n, n, tuple(inner(states[i], states[j]) for i in range(n) for j in range(n)))


def is_unitary(a: OperatorMatrix, tolerance: float = DEFAULT_TOLERANCE) -> UnitarityResult:
    """A†A = I exactly (exact backend) or within tolerance (float)."""
    if a.rows != a.cols:
        raise ShapeMismatchError("unitarity needs a square matrix", operation="is_unitary", shapes=(a.shape,))
    product = matmul(adjoint(a), a)
    residual, worst = product.max_deviation(OperatorMatrix.identity(a.rows, a.backend))
    if a.backend is Backend.EXACT:
        return UnitarityResult(worst is None, residual, worst)
    return UnitarityResult(residual < tolerance, residual, worst)


def pauli(k: int, backend: Backend = Backend.EXACT) -> OperatorMatrix:
    """σ₀ = I₂, σ₁ = X, σ₂ = Y = [[0, -i], [i, 0]], σ₃ = Z."""
    o, z, i = one(backend), zero(backend), imag_unit(backend)
    table = {
        0: ((o, z), (z, o)),
        1: ((z, o), (o, z)),
        2: ((z, -i), (i, z)),
        3: ((o, z), (z, -o)),
    }
    if k not in table:
        raise ValueError(f"no Pauli matrix σ{k}")
    return OperatorMatrix.from_rows(table[k])


def bell_state(backend: Backend = Backend.EXACT) -> StateVector:
    """(|00'⟩ + |11'⟩)/√2."""
    return (StateVector.basis(0, 0, backend) + StateVector.basis(1, 1, backend)).scale(
        inv_sqrt(2, backend)
    )


def reshape_2x3(state: StateVector) -> OperatorMatrix:
    """Coefficient matrix M with |state⟩ = Σ M[a, b] |a⟩|b'⟩."""
    return OperatorMatrix(DIM_A, DIM_B, state.amplitudes)


def _gram_2x3(m: OperatorMatrix) -> tuple[Scalar, Scalar, Scalar]:
    """Entries (p, q, r) of MM† = [[p, r], [conj r, q]]."""
    backend = m.backend
    p = _sum([abs2(x) for x in m.row(0)], backend)
    q = _sum([abs2(x) for x in m.row(1)], backend)
    r = _sum([x * conj(y) for x, y in zip(m.row(0), m.row(1), strict=True)], backend)
    return p, q, r


def _minor_weight(m: OperatorMatrix) -> Scalar:
    """det(MM†) by Cauchy-Binet: Σ |2×2 minors|², stable for near-product states."""
    backend = m.backend
    minors = [m[0, j] * m[1, k] - m[0, k] * m[1, j] for j, k in ((0, 1), (0, 2), (1, 2))]
    return _sum([abs2(x) for x in minors], backend)


def singular_values_from_invariants(trace: float, det: float) -> tuple[float, float]:
    """Singular values of a 2×n matrix from T = tr MM† and D = det MM†.

    λ± = (T ± √(T² - 4D))/2, with λ₋ evaluated as 2D/(T + √(T² - 4D)) to avoid
    cancellation.
    """
    if trace <= 0.0:
        return (0.0, 0.0)
    disc = math.sqrt(max(trace * trace - 4.0 * det, 0.0))
    high = (trace + disc) / 2.0
    low = 2.0 * max(det, 0.0) / (trace + disc)
    return (math.sqrt(max(high, 0.0)), math.sqrt(max(low, 0.0)))


def schmidt_profile(state: StateVector, tolerance: float = DEFAULT_TOLERANCE) -> SchmidtProfile:
    m = reshape_2x3(state)
    backend = m.backend
    p, q, r = _gram_2x3(m)
    det = _minor_weight(m)
    trace = p + q
    coefficients = singular_values_from_invariants(to_complex(trace).real, to_complex(det).real)

    half = from_rational(Fraction(1, 2), backend)
    deviations = [p - half, q - half, r]
    residual = max(magnitude(d) for d in deviations)
    maximal = all(is_zero(d, tolerance) for d in deviations)

    if backend is Backend.EXACT:
        rank = 0 if is_zero(trace) else (1 if is_zero(det) else 2)
    else:
        rank = sum(1 for c in coefficients if c > tolerance)
    return SchmidtProfile(coefficients, rank, maximal, residual, backend)


def min_singular_value(state: StateVector) -> float:
    """Smaller Schmidt coefficient, in floating point."""
    m = reshape_2x3(state)
    p, q, _ = _gram_2x3(m)
    det = _minor_weight(m)
    return singular_values_from_invariants(to_complex(p + q).real, to_complex(det).real)[1]


def float_singular_values(state: StateVector) -> tuple[float, float]:
    """Singular values of the coefficient matrix by numpy SVD (independent cross-check)."""
    values = np.linalg.svd(reshape_2x3(state).to_numpy(), compute_uv=False)
    return (float(values[0]), float(values[1]))


__all__ = [
    "DIM_A",
    "DIM_B",
    "STATE_DIM",
    "STATE_ORDERING",
    "OperatorMatrix",
    "StateVector",
    "SchmidtProfile",
    "UnitarityResult",
    "matmul",
    "adjoint",
    "kron",
    "apply",
    "inner",
    "gram",
    "is_unitary",
    "pauli",
    "bell_state",
    "reshape_2x3",
    "schmidt_profile",
    "singular_values_from_invariants",
    "min_singular_value",
    "float_singular_values",
]
