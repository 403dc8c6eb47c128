"""
Search of a two-dimensional complement for maximally entangled states.

The complement span{v₁, v₂} is parametrized, up to global phase, by

    ψ(t, φ) = cos t·v₁ + e^{iφ} sin t·v₂,   t ∈ [0, π/2], φ ∈ [0, 2π)

and a state of C²⊗C³ is maximally entangled iff its smaller Schmidt
coefficient equals 1/√2. The scan maximizes the smaller coefficient over a
grid, then polishes the best grid point with Nelder-Mead.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .events import UmebEvents
from .exceptions import InvalidComplementError
from .linalg import StateVector, inner, reshape_2x3
from .log_config import get_context_logger
from .scalar import DEFAULT_TOLERANCE, is_zero, magnitude, one, uniform_backend


logger = get_context_logger("unextendible")

MAX_ENTANGLED_SINGULAR = 1.0 / math.sqrt(2.0)
DEFAULT_GRID = (181, 360)
DEFAULT_EPSILON = 1e-6

# Minimum gain before a refined point replaces the grid witness.
_REFINE_MARGIN = 1e-12


@dataclass(frozen=True)
class ComplementSubspace:
    """Two orthonormal states spanning the complement of the entangled members."""

    v1: StateVector
    v2: StateVector

    @classmethod
    def from_basis(cls, basis: Sequence[StateVector]) -> ComplementSubspace:
        """The completion members (positions 4 and 5) of a basis."""
        return cls(basis[4], basis[5])

    @property
    def generators(self) -> tuple[StateVector, StateVector]:
        return (self.v1, self.v2)

    def validate(
        self, members: Sequence[StateVector], tolerance: float = DEFAULT_TOLERANCE
    ) -> None:
        """Check orthonormality and orthogonality to ``members``.

        Raises:
            InvalidComplementError: On the worst offending overlap
        """
        backend = uniform_backend([self.v1[0], self.v2[0]])
        for g, vector in enumerate(self.generators):
            deviation = vector.norm2() - one(backend)
            if not is_zero(deviation, tolerance):
                raise InvalidComplementError(
                    "complement generator is not normalized",
                    generator=g,
                    residual=magnitude(deviation),
                )
        cross = inner(self.v1, self.v2)
        if not is_zero(cross, tolerance):
            raise InvalidComplementError(
                "complement generators are not orthogonal", residual=magnitude(cross)
            )
        worst: tuple[float, int, int] | None = None
        for m, member in enumerate(members):
            for g, vector in enumerate(self.generators):
                overlap = inner(member, vector)
                if is_zero(overlap, tolerance):
                    continue
                size = magnitude(overlap)
                if worst is None or size > worst[0]:
                    worst = (size, m, g)
        if worst is not None:
            raise InvalidComplementError(
                "complement is not orthogonal to the members",
                member=worst[1],
                generator=worst[2],
                residual=worst[0],
            )


@dataclass(frozen=True)
class ScanResult:
    """Largest smaller-Schmidt-coefficient found over the complement.

    ``t`` and ``phi`` locate the witness ψ(t, φ); ``certified`` marks results
    settled by the product-span certificate, where the maximum is exactly 0.
    """

    max_min_singular: float
    t: float
    phi: float
    grid_max: float
    grid: tuple[int, int]
    refined: bool = False
    certified: bool = False

    @property
    def witness(self) -> dict[str, float]:
        return {"t": self.t, "phi": self.phi, "value": self.max_min_singular}


def product_span_certificate(
    complement: ComplementSubspace, tolerance: float = DEFAULT_TOLERANCE
) -> bool:
    """True if every state in the span is a product state sharing one C³ factor.

    Stacking the two 2×3 coefficient matrices gives a 4×3 matrix; when all of
    its 2×2 minors vanish both generators are u⊗w, u'⊗w, so every combination
    is (αu + βu')⊗w. Exact for the exact backend.
    """
    rows = [*(reshape_2x3(complement.v1).row(i) for i in range(2)), *(
        reshape_2x3(complement.v2).row(i) for i in range(2)
    )]
    for i in range(4):
        for k in range(i + 1, 4):
            for j, m in ((0, 1), (0, 2), (1, 2)):
                minor = rows[i][j] * rows[k][m] - rows[i][m] * rows[k][j]
                if not is_zero(minor, tolerance):
                    return False
    return True


def min_singular_values(states: np.ndarray) -> np.ndarray:
    """Smaller Schmidt coefficient for an array of states of shape (..., 6)."""
    m = states.reshape(*states.shape[:-1], 2, 3)
    row0, row1 = m[..., 0, :], m[..., 1, :]
    trace = np.sum(np.abs(row0) ** 2 + np.abs(row1) ** 2, axis=-1)
    det = np.zeros_like(trace)
    for j, k in ((0, 1), (0, 2), (1, 2)):
        minor = row0[..., j] * row1[..., k] - row0[..., k] * row1[..., j]
        det = det + np.abs(minor) ** 2
    disc = np.sqrt(np.maximum(trace * trace - 4.0 * det, 0.0))
    denom = trace + disc
    low = np.divide(2.0 * det, denom, out=np.zeros_like(trace), where=denom > 0.0)
    return np.sqrt(np.maximum(low, 0.0))


def _states(v1: np.ndarray, v2: np.ndarray, t: np.ndarray, phi: np.ndarray) -> np.ndarray:
    a = np.cos(t)[..., None] * v1
    b = (np.exp(1j * phi) * np.sin(t))[..., None] * v2
    return a + b


def scan_complement(
    complement: ComplementSubspace,
    members: Sequence[StateVector] | None = None,
    grid: tuple[int, int] = DEFAULT_GRID,
    refine: bool = True,
    validate: bool = True,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ScanResult:
    """Maximize the smaller Schmidt coefficient over span{v₁, v₂}.

    Ties on the grid resolve to the lowest (t, φ) index. Refinement only
    replaces the grid witness when it improves on it.

    Raises:
        InvalidComplementError: If ``validate`` and the complement is not
            orthonormal and orthogonal to ``members``
    """
    if validate:
        complement.validate(members or [], tolerance)

    nt, nphi = grid
    v1 = complement.v1.to_numpy()
    v2 = complement.v2.to_numpy()
    t_axis = np.linspace(0.0, math.pi / 2.0, nt)
    phi_axis = np.arange(nphi) * (2.0 * math.pi / nphi)
    tt, pp = np.meshgrid(t_axis, phi_axis, indexing="ij")
    values = min_singular_values(_states(v1, v2, tt, pp))

    flat = int(np.argmax(values))
    it, ip = divmod(flat, nphi)
    grid_max = float(values[it, ip])
    best_t, best_phi, best = float(t_axis[it]), float(phi_axis[ip]), grid_max
    logger.debug(
        UmebEvents.GRID_SCAN_COMPLETED, grid=f"{nt}x{nphi}", grid_max=grid_max, t=best_t, phi=best_phi
    )

    refined = False
    if refine:

        def objective(x: np.ndarray) -> float:
            t = float(np.clip(x[0], 0.0, math.pi / 2.0))
            state = _states(v1, v2, np.array(t), np.array(x[1]))
            return -float(min_singular_values(state))

        result = minimize(
            objective,
            np.array([best_t, best_phi]),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400},
        )
        candidate = -float(result.fun)
        if candidate > best + _REFINE_MARGIN:
            best = candidate
            best_t = float(np.clip(result.x[0], 0.0, math.pi / 2.0))
            best_phi = float(np.mod(result.x[1], 2.0 * math.pi))
            refined = True
        logger.debug(UmebEvents.GRID_REFINED, improved=refined, value=best)

    return ScanResult(best, best_t, best_phi, grid_max, (nt, nphi), refined=refined)


def search_complement(
    complement: ComplementSubspace,
    members: Sequence[StateVector],
    grid: tuple[int, int] = DEFAULT_GRID,
    refine: bool = True,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ScanResult:
    """Certificate first, grid scan otherwise.

    Raises:
        InvalidComplementError: If the complement is not valid for ``members``
    """
    complement.validate(members, tolerance)
    if product_span_certificate(complement, tolerance):
        logger.debug(UmebEvents.EXACT_CERTIFICATE, backend=complement.v1.backend.value)
        return ScanResult(0.0, 0.0, 0.0, 0.0, grid, certified=True)
    return scan_complement(complement, members, grid, refine, validate=False, tolerance=tolerance)


def is_unextendible(result: ScanResult, epsilon: float = DEFAULT_EPSILON) -> bool:
    """No maximally entangled state in the complement: max < 1/√2 - ε."""
    return result.max_min_singular < MAX_ENTANGLED_SINGULAR - epsilon


__all__ = [
    "MAX_ENTANGLED_SINGULAR",
    "DEFAULT_GRID",
    "DEFAULT_EPSILON",
    "ComplementSubspace",
    "ScanResult",
    "product_span_certificate",
    "min_singular_values",
    "scan_complement",
    "search_complement",
    "is_unextendible",
]
