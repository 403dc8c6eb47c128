"""Integration tests for the parameter-family sweep."""

import pytest

from umeb_toolkit.config import SweepConfig, VerifyConfig
from umeb_toolkit.scalar import Backend
from umeb_toolkit.sweep import LOG_FLOOR, SampleOutcome, SweepSummary, run_sweep


FAST = VerifyConfig(grid=(46, 90))


@pytest.mark.integration
class TestRunSweep:
    """Sweeps over closure-valid angles."""

    def test_float_samples_pass(self):
        """Test a few float samples pass every mandatory check."""
        summary = run_sweep(SweepConfig(seed=3, count=3), FAST)
        assert summary.count == 3
        assert summary.all_passed
        assert summary.worst_mu_residual < 1e-10
        assert [o.index for o in summary.outcomes] == [0, 1, 2]

    def test_same_seed_same_text(self):
        """Test two runs with one seed render identical summaries."""
        first = run_sweep(SweepConfig(seed=11, count=2), FAST).render()
        second = run_sweep(SweepConfig(seed=11, count=2), FAST).render()
        assert first == second

    def test_workers_do_not_change_results(self):
        """Test the thread pool keeps sample order and values."""
        serial = run_sweep(SweepConfig(seed=5, count=3, workers=1), FAST)
        pooled = run_sweep(SweepConfig(seed=5, count=3, workers=3), FAST)
        assert serial.to_dict() == pooled.to_dict()

    @pytest.mark.slow
    def test_exact_sample_has_zero_residuals(self):
        """Test exact samples verify with zero residuals."""
        summary = run_sweep(SweepConfig(seed=2, count=1, backend=Backend.EXACT), FAST)
        assert summary.all_passed
        assert summary.worst_mu_residual == 0.0
        assert summary.worst_orthonormal_residual == 0.0

    @pytest.mark.slow
    def test_hundred_samples_pass(self):
        """Test the seeded family of 100 float samples passes at tolerance 1e-10."""
        summary = run_sweep(SweepConfig(seed=7, count=100), FAST)
        assert summary.passed == 100


@pytest.mark.unit
class TestSweepSummary:
    """Aggregation and rendering."""

    def test_zero_residuals_land_in_lowest_bin(self):
        """Test exact zeros are counted in the floor bin."""
        summary = SweepSummary(seed=1, backend="exact", outcomes=[SampleOutcome(0, True, 0.0, 0.0)])
        counts, edges = summary.histogram()
        assert counts[0] == 1
        assert edges[0] == LOG_FLOOR

    def test_failures_rendered(self):
        """Test failed samples are listed with their checks."""
        summary = SweepSummary(
            seed=1,
            backend="float",
            outcomes=[
                SampleOutcome(0, True, 1e-15, 1e-15),
                SampleOutcome(1, False, 0.2, 1e-15, ("mutually-unbiased",)),
            ],
        )
        text = summary.render()
        assert "passed: 1/2" in text
        assert "failed sample 1: mutually-unbiased" in text
        assert not summary.all_passed
        assert summary.to_dict()["failed"] == [{"index": 1, "checks": ["mutually-unbiased"]}]

