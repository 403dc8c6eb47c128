"""Unit tests for the packaged reference examples."""

import pytest

from umeb_toolkit.construct import FirstBasisSpec
from umeb_toolkit.exceptions import ConfigValidationError
from umeb_toolkit.fixtures import example_numbers, load_example, reference_spec
from umeb_toolkit.scalar import AngleFrac
from umeb_toolkit.verify import check_max_entangled, check_orthonormal


@pytest.mark.unit
class TestReferenceData:
    """Loading the reference examples."""

    def test_example_numbers(self):
        """Test the three worked examples are present."""
        assert example_numbers() == [1, 2, 3]

    @pytest.mark.parametrize("number", [0, 4, -1])
    def test_unknown_example_rejected(self, number):
        """Test numbers outside 1-3 raise ConfigValidationError."""
        with pytest.raises(ConfigValidationError):
            load_example(number)

    def test_first_example_has_no_printed_theta_prime(self):
        """Test example 1 prints S but not θ'."""
        example = load_example(1)
        assert example.theta_prime is None
        assert example.pairings == ("rotated",)
        assert example.theta[1] == AngleFrac.of(1, 3)

    def test_second_example_lists_both_pairings(self):
        """Test examples 2 and 3 are checked against both completion pairs."""
        example = load_example(2)
        assert example.pairings == ("default", "rotated")
        assert example.theta_prime == (AngleFrac.of(0), AngleFrac.of(1, 2))

    @pytest.mark.parametrize("name", ["default", "rotated"])
    def test_reference_spec_matches_builtin(self, name):
        """Test the stored completion pairs equal the built-in ones."""
        stored = reference_spec(name)
        builtin = FirstBasisSpec.by_name(name)
        assert stored.c == builtin.c
        assert stored.d == builtin.d

    def test_unknown_pairing_rejected(self):
        """Test an unknown completion pair name raises."""
        with pytest.raises(ConfigValidationError):
            reference_spec("diagonal")


@pytest.mark.unit
class TestPrintedSecondBasis:
    """Second basis assembled from the printed columns."""

    def test_first_example_is_orthonormal_umeb_family(self):
        """Test the printed example 1 data gives six orthonormal states with four maximally entangled."""
        members = load_example(1).second_basis()
        assert len(members) == 6
        assert check_orthonormal(members, label="second").passed
        assert all(check_max_entangled(m).passed for m in members[:4])
