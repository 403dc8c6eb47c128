"""Pytest configuration and shared fixtures for UMEB toolkit tests."""

import json
import os
from pathlib import Path
from typing import Any

import pytest
import structlog


os.environ.setdefault("UMEB_ENVIRONMENT", "testing")

from umeb_toolkit.codec import encode_pair  # noqa: E402
from umeb_toolkit.config import VerifyConfig  # noqa: E402
from umeb_toolkit.construct import BasisPair, FirstBasisSpec, ThetaParams, construct_pair  # noqa: E402
from umeb_toolkit.log_config import clear_context  # noqa: E402
from umeb_toolkit.scalar import Backend  # noqa: E402
from umeb_toolkit.settings import reload_settings  # noqa: E402


# ==================== Path Fixtures ====================


@pytest.fixture(scope="session")
def tests_dir() -> Path:
    """Get tests directory path."""
    return Path(__file__).parent


@pytest.fixture(scope="session")
def fixtures_dir(tests_dir) -> Path:
    """Get fixtures directory path."""
    return tests_dir / "fixtures"


# ==================== Parameter Fixtures ====================


@pytest.fixture
def rotated_params() -> ThetaParams:
    """Angles of the first reference example (rotated completion pair)."""
    return ThetaParams.from_pi_fracs(["0", "1/3", "0", "1", "0", "1/3"], ["1/3", "11/6"], "-")


@pytest.fixture
def closure_params() -> ThetaParams:
    """A closure-valid parameter set on the minus branch."""
    return ThetaParams.from_pi_fracs(["1/2", "1/6", "1/4", "0", "1", "5/12"], ["1/6", "1/3"], "+")


@pytest.fixture
def default_spec() -> FirstBasisSpec:
    return FirstBasisSpec.default()


@pytest.fixture
def rotated_spec() -> FirstBasisSpec:
    return FirstBasisSpec.rotated()


# ==================== Pair Fixtures ====================


@pytest.fixture
def exact_pair(rotated_params, rotated_spec) -> BasisPair:
    """Exact pair built from the first reference example."""
    return construct_pair(rotated_params, rotated_spec, Backend.EXACT)


@pytest.fixture
def float_pair(rotated_params, rotated_spec) -> BasisPair:
    """Same pair in floating point."""
    return construct_pair(rotated_params, rotated_spec, Backend.FLOAT)


@pytest.fixture
def pair_file(tmp_path, exact_pair) -> Path:
    """Exact pair written to a temporary file."""
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(encode_pair(exact_pair)), encoding="utf-8")
    return path


@pytest.fixture
def fast_config() -> VerifyConfig:
    """Coarse complement grid for tests that reach the scan."""
    return VerifyConfig(grid=(46, 90))


def load_json_fixture(fixtures_dir: Path, name: str) -> Any:
    return json.loads((fixtures_dir / name).read_text(encoding="utf-8"))


# ==================== Cleanup ====================


@pytest.fixture(autouse=True)
def reset_state():
    """Reset settings cache and logging context between tests."""
    reload_settings()
    yield
    clear_context()
    structlog.reset_defaults()
    reload_settings()
