"""
UMEB Toolkit Configuration Module

Dataclass configurations consumed by the library and the CLI. Defaults come
from the pydantic settings (settings/config.yaml, UMEB_* environment
variables); explicit arguments, typically CLI flags, override them.
"""

import re
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any

from .exceptions import ConfigValidationError
from .scalar import Backend
from .settings import Settings, get_settings


class BackendChoice(str, Enum):
    """Backend selection for a verification run."""

    AUTO = "auto"  # Exact when the input is exact, float otherwise
    EXACT = "exact"
    FLOAT = "float"
    BOTH = "both"  # Exact and float, plus an agreement entry


_GRID_PATTERN = re.compile(r"^\s*(\d+)\s*[xX×]\s*(\d+)\s*$")


def parse_grid(text: str) -> tuple[int, int]:
    """Parse an "NtxNφ" grid spec such as "181x360".

    Raises:
        ConfigValidationError: If the spec is malformed or has fewer than 2 points per axis
    """
    match = _GRID_PATTERN.match(text)
    if not match:
        raise ConfigValidationError("grid must look like 181x360", config_key="grid", config_value=text)
    grid = (int(match.group(1)), int(match.group(2)))
    _validate_grid(grid)
    return grid


def _validate_grid(grid: tuple[int, int]) -> None:
    if len(grid) != 2 or min(grid) < 2:
        raise ConfigValidationError(
            "grid needs at least 2 points per axis", config_key="grid", config_value=grid
        )


def _validate_positive(key: str, value: float) -> None:
    if not value > 0:
        raise ConfigValidationError(f"{key} must be positive", config_key=key, config_value=value)


@dataclass(frozen=True)
class VerifyConfig:
    """
    Configuration for pair verification.

    Attributes:
        tolerance: Float comparison tolerance (exact checks ignore it)
        grid: (Nt, Nφ) points of the complement scan
        epsilon: Margin below 1/√2 required for unextendibility
        refine: Polish the best grid point with Nelder-Mead
        backend: Which backend(s) to verify with

    Examples:
        >>> VerifyConfig(grid=(91, 180)).grid
        (91, 180)
    """

    tolerance: float = 1e-10
    grid: tuple[int, int] = (181, 360)
    epsilon: float = 1e-6
    refine: bool = True
    backend: BackendChoice = BackendChoice.AUTO

    def __post_init__(self) -> None:
        _validate_positive("tolerance", self.tolerance)
        _validate_positive("epsilon", self.epsilon)
        _validate_grid(self.grid)
        object.__setattr__(self, "backend", BackendChoice(self.backend))

    def backends_for(self, native: Backend) -> list[Backend]:
        """Backends to run for a pair stored in ``native``."""
        if self.backend is BackendChoice.BOTH:
            return [Backend.EXACT, Backend.FLOAT]
        if self.backend is BackendChoice.AUTO:
            return [native]
        return [Backend(self.backend.value)]

    def with_overrides(self, **overrides: Any) -> "VerifyConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_settings(cls, settings: Settings | None = None, **overrides: Any) -> "VerifyConfig":
        settings = settings or get_settings()
        v = settings.verification
        base = cls(
            tolerance=v.tolerance,
            grid=(v.grid_nt, v.grid_nphi),
            epsilon=v.unextendible_epsilon,
            refine=v.refine,
        )
        return base.with_overrides(**overrides)


@dataclass(frozen=True)
class SweepConfig:
    """
    Configuration for the parameter-family sweep.

    Attributes:
        seed: Root seed; each sample gets its own spawned stream
        count: Number of parameter sets
        workers: Thread pool size (results do not depend on it)
        histogram_bins: Bins of the log10 residual histogram
        backend: EXACT samples multiples of π/12, FLOAT samples real angles
    """

    seed: int = 7
    count: int = 100
    workers: int = 1
    histogram_bins: int = 10
    backend: Backend = Backend.FLOAT

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ConfigValidationError("count must be at least 1", config_key="count", config_value=self.count)
        if self.workers < 1:
            raise ConfigValidationError(
                "workers must be at least 1", config_key="workers", config_value=self.workers
            )
        if self.histogram_bins < 1:
            raise ConfigValidationError(
                "histogram_bins must be at least 1",
                config_key="histogram_bins",
                config_value=self.histogram_bins,
            )
        object.__setattr__(self, "backend", Backend(self.backend))

    @classmethod
    def from_settings(cls, settings: Settings | None = None, **overrides: Any) -> "SweepConfig":
        settings = settings or get_settings()
        s = settings.sweep
        values: dict[str, Any] = {
            "seed": s.seed,
            "count": s.count,
            "workers": s.workers,
            "histogram_bins": s.histogram_bins,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class RunConfig:
    """
    Resolved view of one CLI invocation.

    Attributes:
        subcommand: construct | verify | sweep | audit
        verify: Verification settings after flag overrides
        sweep: Sweep settings after flag overrides
        unchecked: Skip the unitarity gate in construct
        input_path: File read by verify
        output_path: File written by construct
        report_path: Where the machine-readable report goes
        example: Built-in example selected by audit
    """

    subcommand: str
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    unchecked: bool = False
    input_path: Path | None = None
    output_path: Path | None = None
    report_path: Path | None = None
    example: int | None = None

    def __post_init__(self) -> None:
        if self.subcommand not in ("construct", "verify", "sweep", "audit"):
            raise ConfigValidationError(
                "unknown subcommand", config_key="subcommand", config_value=self.subcommand
            )
        if self.example is not None and self.example not in (1, 2, 3):
            raise ConfigValidationError(
                "example must be 1, 2 or 3", config_key="example", config_value=self.example
            )

    @property
    def backend(self) -> BackendChoice:
        return self.verify.backend

    @property
    def tolerance(self) -> float:
        return self.verify.tolerance

    @property
    def seed(self) -> int:
        return self.sweep.seed

    @property
    def grid(self) -> tuple[int, int]:
        return self.verify.grid

    @classmethod
    def from_settings(
        cls,
        subcommand: str,
        settings: Settings | None = None,
        *,
        backend: BackendChoice | None = None,
        tolerance: float | None = None,
        grid: tuple[int, int] | None = None,
        seed: int | None = None,
        count: int | None = None,
        workers: int | None = None,
        sweep_backend: Backend | None = None,
        **paths: Any,
    ) -> "RunConfig":
        """Merge settings with explicit overrides (None means "not given")."""
        settings = settings or get_settings()
        verify = VerifyConfig.from_settings(settings, backend=backend, tolerance=tolerance, grid=grid)
        sweep = SweepConfig.from_settings(
            settings, seed=seed, count=count, workers=workers, backend=sweep_backend
        )
        return cls(subcommand, verify, sweep, **paths)


__all__ = [
    "Backend",
    "BackendChoice",
    "parse_grid",
    "VerifyConfig",
    "SweepConfig",
    "RunConfig",
]
