"""Unit tests for the exact/float scalar layer and angles."""

import math
from fractions import Fraction

import pytest

from umeb_toolkit.cyclotomic import CycloNumber, zeta_power
from umeb_toolkit.exceptions import BackendMismatchError, ExactBackendUnavailableError
from umeb_toolkit.scalar import (
    PI,
    THIRD_PI,
    AngleFrac,
    Backend,
    add_angles,
    angle_equals,
    canonical_radians,
    inv_sqrt,
    is_zero,
    phase,
    resolve_backend,
    sub_angles,
    to_backend,
    uniform_backend,
)


@pytest.mark.unit
class TestAngleFrac:
    """Multiples of π."""

    def test_canonicalized_into_one_turn(self):
        """Test -π/3 is stored as 5π/3."""
        assert AngleFrac(Fraction(-1, 3)).pi_frac == Fraction(5, 3)
        assert AngleFrac.of(7, 3).pi_frac == Fraction(1, 3)

    def test_exactness(self):
        """Test only multiples of π/12 embed in Q(ζ24)."""
        assert AngleFrac.of(11, 6).is_exact
        assert AngleFrac.of(5, 12).zeta_exponent == 5
        assert not AngleFrac.of(1, 5).is_exact
        with pytest.raises(ValueError):
            _ = AngleFrac.of(1, 5).zeta_exponent

    def test_arithmetic(self):
        """Test circular sum and difference."""
        assert add_angles(PI, PI) == AngleFrac.of(0)
        assert sub_angles(AngleFrac.of(0), THIRD_PI) == AngleFrac.of(5, 3)
        assert str(THIRD_PI) == "1/3π"

    def test_mixed_angles_fall_back_to_radians(self):
        """Test an exact and a float angle combine in radians."""
        total = add_angles(THIRD_PI, math.pi)
        assert isinstance(total, float)
        assert angle_equals(total, AngleFrac.of(4, 3))

    def test_canonical_radians(self):
        """Test reduction into [0, 2π)."""
        assert canonical_radians(-math.pi / 2) == pytest.approx(3 * math.pi / 2)
        assert canonical_radians(2 * math.pi) == 0.0


@pytest.mark.unit
class TestPhase:
    """e^{iθ} on both backends."""

    def test_exact_phase(self):
        """Test e^{iπ/3} = ζ⁴ exactly."""
        assert phase(THIRD_PI) == zeta_power(4)

    def test_float_phase(self):
        """Test the float backend returns cos + i sin."""
        value = phase(THIRD_PI, Backend.FLOAT)
        assert isinstance(value, complex)
        assert value == pytest.approx(complex(0.5, math.sqrt(3) / 2))

    def test_non_embeddable_falls_back_to_float(self):
        """Test π/5 yields a float phase when no backend is forced."""
        assert isinstance(phase(AngleFrac.of(1, 5)), complex)

    def test_exact_refused_for_non_embeddable(self):
        """Test forcing EXACT on π/5 raises."""
        with pytest.raises(ExactBackendUnavailableError):
            phase(AngleFrac.of(1, 5), Backend.EXACT)


@pytest.mark.unit
class TestBackends:
    """Backend resolution and conversion."""

    def test_resolve_backend(self):
        """Test exact is chosen only for embeddable angles."""
        assert resolve_backend([THIRD_PI, PI]) is Backend.EXACT
        assert resolve_backend([THIRD_PI, 0.3]) is Backend.FLOAT
        assert resolve_backend([THIRD_PI], Backend.FLOAT) is Backend.FLOAT
        with pytest.raises(ExactBackendUnavailableError):
            resolve_backend([0.3], Backend.EXACT)

    def test_uniform_backend_rejects_mixtures(self):
        """Test containers must not mix exact and float scalars."""
        with pytest.raises(BackendMismatchError):
            uniform_backend([CycloNumber.from_rational(1), complex(1, 0)])

    def test_to_backend_is_one_way(self):
        """Test exact → float works and float → exact does not."""
        value = to_backend(inv_sqrt(2, Backend.EXACT), Backend.FLOAT)
        assert value == pytest.approx(1 / math.sqrt(2))
        with pytest.raises(BackendMismatchError):
            to_backend(complex(1, 0), Backend.EXACT)

    def test_is_zero(self):
        """Test exact zero is structural and float zero uses the tolerance."""
        assert is_zero(CycloNumber())
        assert is_zero(complex(1e-12, 0), 1e-10)
        assert not is_zero(complex(1e-8, 0), 1e-10)
