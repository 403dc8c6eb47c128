"""Unit tests for the complement scan and the product-span certificate."""

import math

import numpy as np
import pytest

from umeb_toolkit.construct import FirstBasisSpec, build_first_basis
from umeb_toolkit.exceptions import InvalidComplementError
from umeb_toolkit.linalg import StateVector, bell_state
from umeb_toolkit.scalar import Backend, inv_sqrt
from umeb_toolkit.unextendible import (
    MAX_ENTANGLED_SINGULAR,
    ComplementSubspace,
    ScanResult,
    is_unextendible,
    min_singular_values,
    product_span_certificate,
    scan_complement,
    search_complement,
)


GRID = (46, 90)


def entangled_complement() -> ComplementSubspace:
    """span{|0⟩|0'⟩, |1⟩|1'⟩}, which contains the Bell state at t = π/4."""
    return ComplementSubspace(StateVector.basis(0, 0), StateVector.basis(1, 1))


@pytest.mark.unit
class TestCertificate:
    """Product-span certificate."""

    @pytest.mark.parametrize("name", ["default", "rotated"])
    def test_first_basis_complement_is_certified(self, name):
        """Test c⊗|2'⟩, d⊗|2'⟩ span only product states."""
        basis = build_first_basis(FirstBasisSpec.by_name(name))
        complement = ComplementSubspace.from_basis(basis)
        assert product_span_certificate(complement)
        result = search_complement(complement, basis[:4], GRID)
        assert result.certified
        assert result.max_min_singular == 0.0
        assert is_unextendible(result)

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["default", "rotated"])
    def test_full_grid_agrees_with_certificate(self, name):
        """Test the 181x360 scan alone finds no entanglement in a certified complement."""
        basis = build_first_basis(FirstBasisSpec.by_name(name))
        complement = ComplementSubspace.from_basis(basis)
        result = scan_complement(complement, basis[:4], grid=(181, 360))
        assert not result.certified
        assert result.max_min_singular <= 1e-9
        assert is_unextendible(result)

    def test_entangled_span_not_certified(self):
        """Test |00'⟩, |11'⟩ do not share a C3 factor."""
        assert not product_span_certificate(entangled_complement())


@pytest.mark.unit
class TestScan:
    """Grid scan with Nelder-Mead refinement."""

    def test_scan_finds_bell_state(self):
        """Test the scan reaches 1/√2 in a span containing a Bell state."""
        result = scan_complement(entangled_complement(), grid=GRID, validate=False)
        assert result.max_min_singular == pytest.approx(MAX_ENTANGLED_SINGULAR, abs=1e-9)
        assert result.t == pytest.approx(math.pi / 4, abs=1e-3)
        assert not is_unextendible(result)

    def test_refinement_never_lowers_grid_value(self):
        """Test the refined value is at least the grid maximum."""
        v1 = StateVector.basis(0, 0, Backend.FLOAT)
        s = inv_sqrt(2, Backend.FLOAT)
        v2 = StateVector((0j, 0j, 0j, 0j, s, s))
        result = scan_complement(ComplementSubspace(v1, v2), grid=(7, 11), validate=False)
        assert result.max_min_singular >= result.grid_max
        assert result.grid == (7, 11)

    def test_scan_is_deterministic(self):
        """Test two scans return the same witness."""
        a = scan_complement(entangled_complement(), grid=GRID, validate=False)
        b = scan_complement(entangled_complement(), grid=GRID, validate=False)
        assert a == b

    def test_vectorized_singular_values(self):
        """Test batched smaller Schmidt coefficients."""
        bell = bell_state(Backend.FLOAT).to_numpy()
        product = StateVector.basis(0, 0, Backend.FLOAT).to_numpy()
        values = min_singular_values(np.stack([bell, product]))
        assert values[0] == pytest.approx(1 / math.sqrt(2))
        assert values[1] == pytest.approx(0.0)

    def test_witness_dict(self):
        """Test the witness carries t, φ and the value."""
        result = ScanResult(0.5, 0.1, 0.2, 0.5, GRID)
        assert result.witness == {"t": 0.1, "phi": 0.2, "value": 0.5}


@pytest.mark.unit
class TestValidation:
    """Complement validation."""

    def test_complement_overlapping_members_raises(self):
        """Test a complement containing member 0 is refused with a witness."""
        basis = build_first_basis(FirstBasisSpec.default())
        complement = ComplementSubspace(basis[0], basis[4])
        with pytest.raises(InvalidComplementError) as exc_info:
            complement.validate(basis[:4])
        assert exc_info.value.context["member"] == 0
        assert exc_info.value.context["generator"] == 0

    def test_non_orthogonal_generators_raise(self):
        """Test generators must be orthogonal."""
        v = StateVector.basis(0, 0)
        with pytest.raises(InvalidComplementError):
            ComplementSubspace(v, v).validate([])
