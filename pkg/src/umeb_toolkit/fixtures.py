"""
Reference examples shipped as package data.

The matrices and states are stored as printed, entry by entry, so audits
compare the builders against data that never passed through them. Each entry
[a, b, c, d] denotes (a + b√3) + (c + d√3)·i, and a ``scale`` n multiplies the
whole object by 1/√n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any

from .construct import FirstBasisSpec
from .cyclotomic import IMAG_UNIT, SQRT3, CycloNumber
from .exceptions import ConfigValidationError
from .linalg import OperatorMatrix, StateVector, apply, kron, pauli
from .scalar import AngleFrac, Backend, inv_sqrt


DATA_PACKAGE = "umeb_toolkit.data"
DATA_FILE = "reference_examples.json"


def _entry(raw: list[Any]) -> CycloNumber:
    a, b, c, d = (Fraction(x) for x in raw)
    return (a + b * SQRT3) + (c + d * SQRT3) * IMAG_UNIT


def _scale(n: int) -> CycloNumber:
    return CycloNumber.from_rational(1) if n == 1 else inv_sqrt(n, Backend.EXACT)  # type: ignore[return-value]


def _vector(obj: dict[str, Any]) -> tuple[CycloNumber, ...]:
    factor = _scale(int(obj["scale"]))
    return tuple(factor * _entry(e) for e in obj["entries"])


def _matrix(obj: dict[str, Any]) -> OperatorMatrix:
    factor = _scale(int(obj["scale"]))
    return OperatorMatrix.from_rows([[factor * _entry(e) for e in row] for row in obj["rows"]])


@dataclass(frozen=True)
class ReferenceExample:
    """One worked example: printed angles, W, S, the C³ basis (x', y', z') and (a, b)."""

    number: int
    title: str
    pairings: tuple[str, ...]
    theta: tuple[AngleFrac, ...]
    theta_prime: tuple[AngleFrac, ...] | None
    w: OperatorMatrix
    s: OperatorMatrix
    x: tuple[CycloNumber, ...]
    y: tuple[CycloNumber, ...]
    z: tuple[CycloNumber, ...]
    a: tuple[CycloNumber, ...]
    b: tuple[CycloNumber, ...]

    def second_basis(self) -> tuple[StateVector, ...]:
        """ψⱼ = (σⱼ⊗I₃)(|0⟩|x'⟩ + |1⟩|y'⟩)/√2 for j = 0..3, ψ₄ = a⊗z', ψ₅ = b⊗z'."""
        core = StateVector((*self.x, *self.y)).scale(inv_sqrt(2, Backend.EXACT))
        identity3 = OperatorMatrix.identity(3)
        members = [apply(kron(pauli(j), identity3), core) for j in range(4)]
        members.append(StateVector.product(self.a, self.z))
        members.append(StateVector.product(self.b, self.z))
        return tuple(members)


@lru_cache(maxsize=1)
def _load_raw() -> dict[str, Any]:
    text = resources.files(DATA_PACKAGE).joinpath(DATA_FILE).read_text(encoding="utf-8")
    data: dict[str, Any] = json.loads(text)
    return data


def reference_spec(name: str) -> FirstBasisSpec:
    """First-basis spec as stored in the data file ("default" or "rotated")."""
    pairs = _load_raw()["completion_pairs"]
    if name not in pairs:
        raise ConfigValidationError("unknown completion pair", config_key="pairing", config_value=name)
    entry = pairs[name]
    return FirstBasisSpec(name, _vector(entry["c"]), _vector(entry["d"]))  # type: ignore[arg-type]


@lru_cache(maxsize=3)
def load_example(number: int) -> ReferenceExample:
    """Reference example 1, 2 or 3.

    Raises:
        ConfigValidationError: For any other number
    """
    examples = _load_raw()["examples"]
    key = str(number)
    if key not in examples:
        raise ConfigValidationError("example must be 1, 2 or 3", config_key="example", config_value=number)
    raw = examples[key]
    prime = raw.get("theta_prime")
    return ReferenceExample(
        number=number,
        title=raw["title"],
        pairings=tuple(raw["pairings"]),
        theta=tuple(AngleFrac(Fraction(t)) for t in raw["theta"]),
        theta_prime=tuple(AngleFrac(Fraction(t)) for t in prime) if prime else None,
        w=_matrix(raw["W"]),
        s=_matrix(raw["S"]),
        x=_vector(raw["x"]),
        y=_vector(raw["y"]),
        z=_vector(raw["z"]),
        a=_vector(raw["a"]),
        b=_vector(raw["b"]),
    )


def example_numbers() -> list[int]:
    return sorted(int(k) for k in _load_raw()["examples"])


__all__ = [
    "ReferenceExample",
    "reference_spec",
    "load_example",
    "example_numbers",
]
