"""Unit tests for basis construction, templates and the closure."""

import math

import pytest

from umeb_toolkit.construct import (
    MEMBER_ROLES,
    FirstBasisSpec,
    Sign,
    ThetaParams,
    build_F,
    build_first_basis,
    build_S,
    build_second_basis,
    build_W,
    closure_prediction,
    completion_operator,
    construct_from_operators,
    construct_pair,
    resolve_s_template,
    resolve_w_branch,
    sample_valid_params,
    unitarity_closure,
)
from umeb_toolkit.exceptions import (
    ExactBackendUnavailableError,
    InvalidCompletionPairError,
    InvalidParamsError,
)
from umeb_toolkit.linalg import OperatorMatrix, gram, is_unitary, matmul, schmidt_profile
from umeb_toolkit.scalar import AngleFrac, Backend, from_rational


def pi_fracs(*values: str) -> tuple[AngleFrac, ...]:
    return tuple(AngleFrac.parse(v) for v in values)


@pytest.mark.unit
class TestThetaParams:
    """Template angle container."""

    def test_wrong_lengths_raise(self):
        """Test six θ and two θ' are required."""
        with pytest.raises(InvalidParamsError):
            ThetaParams(pi_fracs("0", "1"))

    def test_exactness(self, rotated_params):
        """Test π/12 multiples are exact and perturbations are not."""
        assert rotated_params.is_exact
        shifted = rotated_params.perturbed(0, 1e-3)
        assert not shifted.is_exact
        assert isinstance(shifted.theta[0], float)
        assert shifted.theta[0] == pytest.approx(1e-3)

    def test_float_angles_canonicalized(self):
        """Test negative radians are reduced into [0, 2π)."""
        params = ThetaParams((-1.0, 0.0, 0.0, 0.0, 0.0, 0.0), (0.0, 0.0))
        assert params.theta[0] == pytest.approx(2 * math.pi - 1.0)


@pytest.mark.unit
class TestFirstBasis:
    """First-basis completion pairs and members."""

    def test_non_orthonormal_pair_refused(self):
        """Test (|0⟩, |0⟩) is rejected."""
        one, zero = from_rational(1, Backend.EXACT), from_rational(0, Backend.EXACT)
        with pytest.raises(InvalidCompletionPairError):
            FirstBasisSpec("bad", (one, zero), (one, zero))

    def test_unknown_name(self):
        """Test only default and rotated are built in."""
        with pytest.raises(InvalidCompletionPairError):
            FirstBasisSpec.by_name("other")

    def test_computational_flag(self, default_spec, rotated_spec):
        """Test only the default pair is computational."""
        assert default_spec.is_computational
        assert not rotated_spec.is_computational

    @pytest.mark.parametrize("name", ["default", "rotated"])
    def test_first_basis_is_orthonormal(self, name):
        """Test the six members form an orthonormal basis exactly."""
        members = build_first_basis(FirstBasisSpec.by_name(name))
        assert gram(members).equals(OperatorMatrix.identity(6))

    def test_member_roles(self, default_spec):
        """Test members 0-3 are maximally entangled and 4-5 are products."""
        members = build_first_basis(default_spec)
        assert MEMBER_ROLES[:4] == ("maximally-entangled member",) * 4
        for j in range(4):
            assert schmidt_profile(members[j]).maximally_entangled
        for j in (4, 5):
            assert schmidt_profile(members[j]).rank == 1

    def test_F_columns_are_members(self, rotated_spec):
        """Test F is unitary with the members as columns."""
        f = build_F(rotated_spec)
        members = build_first_basis(rotated_spec)
        assert is_unitary(f)
        assert f.column(4) == members[4].amplitudes


@pytest.mark.unit
class TestTemplates:
    """W and S templates and the unitarity closure."""

    def test_closure_gives_unitary_w(self):
        """Test W is exactly unitary on both closure branches."""
        for branch in Sign:
            for t1, t3, t4 in (("0", "0", "1"), ("1/4", "5/6", "1/12"), ("3/2", "1", "7/12")):
                theta = unitarity_closure(*pi_fracs(t1, t3, t4), branch)
                assert is_unitary(build_W(theta)), (branch, t1, t3, t4)

    def test_closure_values(self):
        """Test θ2 = θ1 ± π/3, θ5 = θ4 + π, θ6 = θ3 + θ4 - θ1 ∓ 2π/3."""
        plus = unitarity_closure(*pi_fracs("0", "0", "1"), Sign.PLUS)
        assert plus == pi_fracs("0", "1/3", "0", "1", "0", "1/3")
        minus = unitarity_closure(*pi_fracs("1", "0", "0"), Sign.MINUS)
        assert minus == pi_fracs("1", "2/3", "0", "0", "1", "5/3")

    def test_s_template_unitary_for_any_angles(self):
        """Test S is unitary for arbitrary θ' on both branches."""
        for branch in Sign:
            assert is_unitary(build_S(pi_fracs("1/3", "11/6"), branch))
            assert is_unitary(build_S((0.37, 2.9), branch))

    def test_resolve_w_branch(self):
        """Test branch detection from θ2 - θ1."""
        assert resolve_w_branch(pi_fracs("0", "1/3", "0", "1", "0", "1/3")) is Sign.PLUS
        assert resolve_w_branch(pi_fracs("1", "2/3", "0", "0", "1", "1/3")) is Sign.MINUS
        assert resolve_w_branch(pi_fracs("0", "1/2", "0", "0", "1", "0")) is None

    def test_printed_angles_off_closure_are_not_unitary(self):
        """Test angles meeting the pairwise conditions but not the closure fail unitarity."""
        theta = pi_fracs("1", "2/3", "0", "0", "1", "1/3")
        assert closure_prediction(theta)[5] == AngleFrac.parse("5/3")
        assert not is_unitary(build_W(theta))

    def test_float_template_matches_exact(self, rotated_params):
        """Test both backends build the same W."""
        exact = build_W(rotated_params.theta, Backend.EXACT)
        floating = build_W(rotated_params.theta, Backend.FLOAT)
        assert exact.to_float().equals(floating, 1e-12)


@pytest.mark.unit
class TestCompletionOperator:
    """S·V† for rotated completion pairs and template recovery."""

    def test_default_pair_uses_template(self, default_spec):
        """Test V = I leaves S unchanged."""
        s = build_S(pi_fracs("0", "1/2"), Sign.MINUS)
        assert completion_operator(s, default_spec) is s

    def test_rotated_pair_maps_c_to_first_column(self, rotated_spec):
        """Test S·V† sends c to S|0⟩."""
        s = build_S(pi_fracs("1/3", "11/6"), Sign.MINUS)
        op = completion_operator(s, rotated_spec)
        c = OperatorMatrix.from_columns([rotated_spec.c])
        assert matmul(op, c).column(0) == s.column(0)

    def test_resolve_s_template_round_trip(self, rotated_spec):
        """Test (θ', branch) are recovered from the completion operator."""
        s = build_S(pi_fracs("1/3", "11/6"), Sign.MINUS)
        resolved = resolve_s_template(completion_operator(s, rotated_spec), rotated_spec)
        assert resolved == (pi_fracs("1/3", "11/6"), Sign.MINUS)

    def test_resolve_s_template_rejects_non_template(self, default_spec):
        """Test a matrix outside the template family resolves to None."""
        assert resolve_s_template(OperatorMatrix.identity(2), default_spec) is None


@pytest.mark.unit
class TestConstructPair:
    """Pair construction."""

    def test_second_basis_is_orthonormal(self, exact_pair):
        """Test the partner basis is orthonormal exactly."""
        assert gram(exact_pair.second).equals(OperatorMatrix.identity(6))
        assert exact_pair.has_provenance

    def test_non_unitary_rejected(self):
        """Test invalid angles raise unless unchecked."""
        params = ThetaParams(pi_fracs("1", "2/3", "0", "0", "1", "1/3"), pi_fracs("0", "1/2"))
        with pytest.raises(InvalidParamsError):
            construct_pair(params)
        pair = construct_pair(params, unchecked=True)
        assert not gram(pair.second).equals(OperatorMatrix.identity(6))

    def test_exact_refused_for_float_angles(self, rotated_params):
        """Test EXACT cannot be forced on perturbed angles."""
        with pytest.raises(ExactBackendUnavailableError):
            construct_pair(rotated_params.perturbed(2, 0.01), backend=Backend.EXACT)

    def test_identity_operators_reproduce_first_basis(self, default_spec):
        """Test W = I, S = I leaves every member unchanged."""
        pair = construct_from_operators(
            default_spec, OperatorMatrix.identity(3), OperatorMatrix.identity(2)
        )
        assert pair.second == pair.first
        assert not pair.has_provenance

    def test_build_second_basis_is_literal(self, default_spec):
        """Test build_second_basis applies S as given."""
        first = build_first_basis(default_spec)
        second = build_second_basis(first, OperatorMatrix.identity(3), OperatorMatrix.identity(2))
        assert second == first


@pytest.mark.unit
class TestSampling:
    """Seeded parameter sampling."""

    def test_deterministic_for_seed(self):
        """Test the same seed gives the same samples."""
        assert sample_valid_params(7, 5) == sample_valid_params(7, 5)
        assert sample_valid_params(7, 5) != sample_valid_params(8, 5)

    def test_independent_of_worker_count(self):
        """Test the result does not depend on the thread count."""
        assert sample_valid_params(3, 8, workers=1) == sample_valid_params(3, 8, workers=4)

    def test_exact_samples_are_exact(self):
        """Test exact sampling stays on multiples of π/12."""
        for params in sample_valid_params(1, 5, Backend.EXACT):
            assert params.is_exact
            assert is_unitary(build_W(params.theta))

    def test_count_must_be_positive(self):
        """Test count < 1 is refused."""
        with pytest.raises(ValueError):
            sample_valid_params(1, 0)
