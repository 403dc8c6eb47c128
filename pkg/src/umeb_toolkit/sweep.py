"""
Property sweep over the closure-generated parameter family.

Every sample is built from independently seeded angles, verified with the
mandatory checks and reduced to its residuals. The summary holds no timings,
so two runs with the same seed render byte-identical text.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import SweepConfig, VerifyConfig
from .construct import FirstBasisSpec, ThetaParams, construct_pair, sample_valid_params
from .events import UmebEvents
from .log_config import LoggingContext, get_context_logger
from .verify import VerificationReport, verify_pair


logger = get_context_logger("sweep")

# log10 of an exactly zero residual is reported in the lowest bin
LOG_FLOOR = -18.0
LOG_CEILING = 0.0


@dataclass(frozen=True)
class SampleOutcome:
    index: int
    passed: bool
    mu_residual: float
    orthonormal_residual: float
    failures: tuple[str, ...] = ()


@dataclass
class SweepSummary:
    """Aggregate of one sweep."""

    seed: int
    backend: str
    outcomes: list[SampleOutcome] = field(default_factory=list)
    bins: int = 10

    @property
    def count(self) -> int:
        return len(self.outcomes)

    @property
    def passed(self) -> int:
        return sum(1 for o in self.outcomes if o.passed)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.count

    @property
    def worst_mu_residual(self) -> float:
        return max((o.mu_residual for o in self.outcomes), default=0.0)

    @property
    def worst_orthonormal_residual(self) -> float:
        return max((o.orthonormal_residual for o in self.outcomes), default=0.0)

    def histogram(self) -> tuple[list[int], list[float]]:
        """Counts and edges of log10 mutual-unbiasedness residuals on a fixed range."""
        residuals = np.array([o.mu_residual for o in self.outcomes], dtype=float)
        with np.errstate(divide="ignore"):
            logs = np.clip(np.log10(residuals), LOG_FLOOR, LOG_CEILING)
        counts, edges = np.histogram(logs, bins=self.bins, range=(LOG_FLOOR, LOG_CEILING))
        return [int(c) for c in counts], [float(e) for e in edges]

    def render(self) -> str:
        lines = [
            f"sweep seed={self.seed} backend={self.backend}",
            f"samples: {self.count}",
            f"passed: {self.passed}/{self.count}",
            f"worst mutual-unbiasedness residual: {self.worst_mu_residual:.3e}",
            f"worst orthonormality residual: {self.worst_orthonormal_residual:.3e}",
            "log10 residual histogram:",
        ]
        counts, edges = self.histogram()
        for k, c in enumerate(counts):
            lines.append(f"  [{edges[k]:6.1f}, {edges[k + 1]:6.1f}) {c:5d} {'#' * c}")
        failed = [o for o in self.outcomes if not o.passed]
        for outcome in failed:
            lines.append(f"failed sample {outcome.index}: {', '.join(outcome.failures)}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict[str, Any]:
        counts, edges = self.histogram()
        return {
            "seed": self.seed,
            "backend": self.backend,
            "count": self.count,
            "passed": self.passed,
            "worst_mu_residual": self.worst_mu_residual,
            "worst_orthonormal_residual": self.worst_orthonormal_residual,
            "histogram": {"counts": counts, "edges": edges},
            "failed": [
                {"index": o.index, "checks": list(o.failures)} for o in self.outcomes if not o.passed
            ],
        }


def _residual(report: VerificationReport, prefix: str) -> float:
    values = [c.residual for c in report.checks if c.name.startswith(prefix)]
    return max(values, default=0.0)


def _run_sample(index: int, params: ThetaParams, config: SweepConfig, verify: VerifyConfig) -> SampleOutcome:
    spec = FirstBasisSpec.default(config.backend)
    pair = construct_pair(params, spec, config.backend, tolerance=verify.tolerance)
    report = verify_pair(pair, verify)
    outcome = SampleOutcome(
        index=index,
        passed=report.overall,
        mu_residual=_residual(report, "mutually-unbiased"),
        orthonormal_residual=_residual(report, "orthonormal"),
        failures=tuple(sorted({c.name for c in report.failures(mandatory_only=True)})),
    )
    logger.debug(
        UmebEvents.SWEEP_SAMPLE,
        index=index,
        passed=outcome.passed,
        mu_residual=outcome.mu_residual,
    )
    return outcome


def run_sweep(config: SweepConfig | None = None, verify: VerifyConfig | None = None) -> SweepSummary:
    """Sample ``config.count`` closure-valid parameter sets and verify each.

    Results are ordered by sample index whatever the worker count.
    """
    config = config or SweepConfig()
    verify = (verify or VerifyConfig()).with_overrides(backend=config.backend.value)
    summary = SweepSummary(seed=config.seed, backend=config.backend.value, bins=config.histogram_bins)

    with LoggingContext(operation="sweep"):
        samples = sample_valid_params(
            config.seed, config.count, config.backend, config.workers, verify.tolerance
        )
        jobs = list(enumerate(samples))
        if config.workers > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                summary.outcomes = list(
                    pool.map(lambda job: _run_sample(job[0], job[1], config, verify), jobs)
                )
        else:
            summary.outcomes = [_run_sample(i, p, config, verify) for i, p in jobs]

        logger.info(
            UmebEvents.SWEEP_COMPLETED,
            seed=config.seed,
            count=summary.count,
            passed=summary.passed,
            worst_mu_residual=summary.worst_mu_residual,
            worst_log10=math.log10(summary.worst_mu_residual) if summary.worst_mu_residual > 0 else None,
        )
    return summary


__all__ = [
    "SampleOutcome",
    "SweepSummary",
    "run_sweep",
]
