"""
JSON encoding of scalars, angles, states, matrices, parameters and basis pairs.

Exact scalars round-trip bit-exactly as eight "p/q" strings over the power
basis of Q(ζ₂₄); floating scalars are {"re", "im"} pairs. Decoding rejects
malformed payloads, zero states and non-normalized states with
PairFileParseError rather than repairing them.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections.abc import Mapping
from fractions import Fraction
from pathlib import Path
from typing import Any

from .construct import BasisPair, FirstBasisSpec, Sign, ThetaParams
from .cyclotomic import DEGREE, CycloNumber
from .events import UmebEvents
from .exceptions import PairFileParseError, UmebException
from .linalg import STATE_DIM, STATE_ORDERING, OperatorMatrix, StateVector
from .log_config import get_context_logger
from .scalar import DEFAULT_TOLERANCE, Angle, AngleFrac, Backend, Scalar, is_zero, one


logger = get_context_logger("codec")


def _fail(message: str, path: str, source: str | None = None) -> PairFileParseError:
    return PairFileParseError(message, path=path, source=source)


def _fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _parse_fraction(text: Any, path: str) -> Fraction:
    if not isinstance(text, str | int) or isinstance(text, bool):
        raise _fail("expected a rational string 'p/q'", path)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _fail(f"invalid rational {text!r}", path) from exc


# Scalars


def encode_scalar(value: Scalar) -> dict[str, Any]:
    if isinstance(value, CycloNumber):
        return {"cyclo": [_fraction_text(c) for c in value.coeffs]}
    z = complex(value)
    return {"re": z.real, "im": z.imag}


def decode_scalar(obj: Any, path: str = "$") -> Scalar:
    if not isinstance(obj, Mapping):
        raise _fail("scalar must be an object", path)
    if "cyclo" in obj:
        coeffs = obj["cyclo"]
        if not isinstance(coeffs, list) or len(coeffs) != DEGREE:
            raise _fail(f"'cyclo' needs {DEGREE} coefficients", path)
        return CycloNumber(_parse_fraction(c, f"{path}.cyclo[{k}]") for k, c in enumerate(coeffs))
    if "re" in obj and "im" in obj:
        re, im = obj["re"], obj["im"]
        if not all(isinstance(x, int | float) and not isinstance(x, bool) for x in (re, im)):
            raise _fail("'re' and 'im' must be numbers", path)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise _fail("scalar is not finite", path)
        return complex(float(re), float(im))
    raise _fail("scalar needs 'cyclo' or 're'/'im'", path)


# Angles


def encode_angle(angle: Angle) -> dict[str, Any]:
    if isinstance(angle, AngleFrac):
        return {"pi_frac": _fraction_text(angle.pi_frac)}
    return {"radians": float(angle)}


def decode_angle(obj: Any, path: str = "$") -> Angle:
    if isinstance(obj, Mapping) and "pi_frac" in obj:
        return AngleFrac(_parse_fraction(obj["pi_frac"], f"{path}.pi_frac"))
    if isinstance(obj, Mapping) and "radians" in obj:
        value = obj["radians"]
        if not isinstance(value, int | float) or isinstance(value, bool) or not math.isfinite(value):
            raise _fail("'radians' must be a finite number", path)
        return float(value)
    raise _fail("angle needs 'pi_frac' or 'radians'", path)


# States and matrices


def encode_state(state: StateVector) -> dict[str, Any]:
    return {"ordering": STATE_ORDERING, "amplitudes": [encode_scalar(a) for a in state]}


def decode_state(obj: Any, path: str = "$", tolerance: float = DEFAULT_TOLERANCE) -> StateVector:
    if not isinstance(obj, Mapping):
        raise _fail("state must be an object", path)
    if obj.get("ordering") != STATE_ORDERING:
        raise _fail(f"state ordering must be '{STATE_ORDERING}'", path)
    raw = obj.get("amplitudes")
    if not isinstance(raw, list) or len(raw) != STATE_DIM:
        raise _fail(f"state needs {STATE_DIM} amplitudes", path)
    amplitudes = [decode_scalar(a, f"{path}.amplitudes[{k}]") for k, a in enumerate(raw)]
    try:
        state = StateVector(tuple(amplitudes))
    except UmebException as exc:
        raise _fail(exc.message, path) from exc
    norm2 = state.norm2()
    if is_zero(norm2, tolerance):
        raise _fail("zero state", path)
    if not is_zero(norm2 - one(state.backend), tolerance):
        raise _fail("state is not normalized", path)
    return state


def encode_matrix(matrix: OperatorMatrix) -> list[list[dict[str, Any]]]:
    return [[encode_scalar(x) for x in matrix.row(i)] for i in range(matrix.rows)]


def decode_matrix(obj: Any, path: str = "$") -> OperatorMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise _fail("matrix must be a nested array", path)
    rows = [[decode_scalar(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)]
    try:
        return OperatorMatrix.from_rows(rows)
    except UmebException as exc:
        raise _fail(exc.message, path) from exc


# Parameters and first-basis specs


def encode_params(params: ThetaParams) -> dict[str, Any]:
    return {
        "theta": [encode_angle(a) for a in params.theta],
        "theta_prime": [encode_angle(a) for a in params.theta_prime],
        "s_branch": params.s_branch.value,
    }


def decode_params(obj: Any, path: str = "$") -> ThetaParams:
    if not isinstance(obj, Mapping):
        raise _fail("params must be an object", path)
    theta, prime = obj.get("theta"), obj.get("theta_prime")
    if not isinstance(theta, list) or len(theta) != 6:
        raise _fail("'theta' needs 6 angles", f"{path}.theta")
    if not isinstance(prime, list) or len(prime) != 2:
        raise _fail("'theta_prime' needs 2 angles", f"{path}.theta_prime")
    try:
        branch = Sign(obj.get("s_branch", "+"))
    except ValueError as exc:
        raise _fail("'s_branch' must be '+' or '-'", f"{path}.s_branch") from exc
    return ThetaParams(
        tuple(decode_angle(a, f"{path}.theta[{k}]") for k, a in enumerate(theta)),
        tuple(decode_angle(a, f"{path}.theta_prime[{k}]") for k, a in enumerate(prime)),
        branch,
    )


def encode_spec(spec: FirstBasisSpec) -> dict[str, Any]:
    return {
        "name": spec.name,
        "c": [encode_scalar(x) for x in spec.c],
        "d": [encode_scalar(x) for x in spec.d],
    }


def decode_spec(obj: Any, path: str = "$") -> FirstBasisSpec:
    if not isinstance(obj, Mapping):
        raise _fail("first-basis spec must be an object", path)
    try:
        c = obj["c"]
        d = obj["d"]
        return FirstBasisSpec(
            str(obj.get("name", "custom")),
            tuple(decode_scalar(x, f"{path}.c[{k}]") for k, x in enumerate(c)),  # type: ignore[arg-type]
            tuple(decode_scalar(x, f"{path}.d[{k}]") for k, x in enumerate(d)),  # type: ignore[arg-type]
        )
    except (KeyError, TypeError) as exc:
        raise _fail("first-basis spec needs 'c' and 'd'", path) from exc
    except UmebException as exc:
        raise _fail(exc.message, path) from exc


# Basis pairs


def encode_pair(pair: BasisPair) -> dict[str, Any]:
    data: dict[str, Any] = {"backend": pair.backend.value}
    if pair.params is not None:
        data["params"] = encode_params(pair.params)
    if pair.spec is not None:
        data["spec"] = encode_spec(pair.spec)
    data["first"] = [encode_state(s) for s in pair.first]
    data["second"] = [encode_state(s) for s in pair.second]
    if pair.notes:
        data["notes"] = list(pair.notes)
    return data


def _decode_basis(obj: Any, key: str, tolerance: float) -> tuple[StateVector, ...]:
    if not isinstance(obj, list) or len(obj) != 6:
        count = len(obj) if isinstance(obj, list) else 0
        raise _fail(f"'{key}' needs 6 states, got {count}", key)
    return tuple(decode_state(s, f"{key}[{k}]", tolerance) for k, s in enumerate(obj))


def decode_pair(obj: Any, tolerance: float = DEFAULT_TOLERANCE) -> BasisPair:
    """Decode a basis pair payload.

    Raises:
        PairFileParseError: On any malformed or degenerate element
    """
    if not isinstance(obj, Mapping):
        raise _fail("pair file must hold a JSON object", "$")
    try:
        backend = Backend(obj.get("backend"))
    except ValueError as exc:
        raise _fail("'backend' must be 'exact' or 'float'", "backend") from exc

    first = _decode_basis(obj.get("first"), "first", tolerance)
    second = _decode_basis(obj.get("second"), "second", tolerance)
    actual = first[0].backend
    if any(s.backend is not actual for s in (*first, *second)) or actual is not backend:
        raise _fail(f"states do not match the declared '{backend.value}' backend", "backend")

    params = decode_params(obj["params"], "params") if obj.get("params") is not None else None
    spec = decode_spec(obj["spec"], "spec") if obj.get("spec") is not None else None
    notes = obj.get("notes") or []
    if not isinstance(notes, list) or not all(isinstance(n, str) for n in notes):
        raise _fail("'notes' must be a list of strings", "notes")
    return BasisPair(first, second, params, spec, tuple(notes))


def dumps(data: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def pair_digest(pair: BasisPair) -> str:
    """sha256 of the canonical encoding of ``pair``."""
    canonical = json.dumps(encode_pair(pair), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_pair(pair: BasisPair, path: Path) -> None:
    path.write_text(dumps(encode_pair(pair)), encoding="utf-8")
    logger.info(UmebEvents.FILE_WRITTEN, path=str(path), kind="pair")


def read_pair(path: Path, tolerance: float = DEFAULT_TOLERANCE) -> BasisPair:
    """Load a pair file.

    Raises:
        PairFileParseError: If the file is unreadable, not JSON, or malformed
    """
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        logger.error(UmebEvents.PARSE_FAILED, path=str(path), error=str(exc))
        raise PairFileParseError(f"cannot read file: {exc.strerror}", source=str(path)) from exc
    except json.JSONDecodeError as exc:
        logger.error(UmebEvents.PARSE_FAILED, path=str(path), error=str(exc))
        raise PairFileParseError(
            f"invalid JSON at line {exc.lineno}", source=str(path)
        ) from exc
    try:
        pair = decode_pair(payload, tolerance)
    except PairFileParseError as exc:
        logger.error(UmebEvents.PARSE_FAILED, path=str(path), error=str(exc))
        raise PairFileParseError(exc.message, path=exc.path, source=str(path)) from exc
    logger.info(UmebEvents.FILE_LOADED, path=str(path), backend=pair.backend.value)
    return pair


def write_json(data: Any, path: Path, kind: str = "report") -> None:
    path.write_text(dumps(data), encoding="utf-8")
    logger.info(UmebEvents.FILE_WRITTEN, path=str(path), kind=kind)


__all__ = [
    "encode_scalar",
    "decode_scalar",
    "encode_angle",
    "decode_angle",
    "encode_state",
    "decode_state",
    "encode_matrix",
    "decode_matrix",
    "encode_params",
    "decode_params",
    "encode_spec",
    "decode_spec",
    "encode_pair",
    "decode_pair",
    "dumps",
    "pair_digest",
    "write_pair",
    "read_pair",
    "write_json",
]
