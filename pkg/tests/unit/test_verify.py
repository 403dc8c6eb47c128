"""Unit tests for the verification checks and report."""

import pytest

from umeb_toolkit.config import BackendChoice, VerifyConfig
from umeb_toolkit.construct import (
    BasisPair,
    FirstBasisSpec,
    Sign,
    ThetaParams,
    build_F,
    build_first_basis,
    build_S,
    build_W,
    completion_operator,
    construct_pair,
)
from umeb_toolkit.exceptions import ExactBackendUnavailableError
from umeb_toolkit.linalg import OperatorMatrix, bell_state, inner
from umeb_toolkit.scalar import Backend, inv_sqrt, to_complex
from umeb_toolkit.verify import (
    INDEX_NOTE,
    CheckResult,
    VerificationReport,
    check_max_entangled,
    check_modulus_pattern,
    check_mutually_unbiased,
    check_orthonormal,
    check_perpendicularity,
    check_theta_conditions,
    perpendicularity_relations,
    verify_pair,
)


MANDATORY = [
    "orthonormal[first]",
    "max-entangled[first]",
    "unextendible[first]",
    "orthonormal[second]",
    "max-entangled[second]",
    "unextendible[second]",
    "mutually-unbiased",
]


@pytest.mark.unit
class TestIndividualChecks:
    """Predicates on their own."""

    def test_orthonormal_detects_duplicate(self, default_spec):
        """Test a repeated member fails with its Gram position."""
        members = list(build_first_basis(default_spec))
        members[5] = members[4]
        result = check_orthonormal(members, label="first")
        assert not result.passed
        assert result.witness == [4, 5]

    def test_max_entangled_bell_state(self):
        """Test the Bell state passes with zero residual."""
        result = check_max_entangled(bell_state())
        assert result.passed
        assert result.residual == 0.0

    def test_mutually_unbiased_fails_for_identical_bases(self, default_spec):
        """Test a basis is not unbiased to itself."""
        basis = build_first_basis(default_spec)
        result = check_mutually_unbiased(basis, basis)
        assert not result.passed
        assert result.witness is not None

    def test_modulus_pattern_holds_for_valid_templates(self, rotated_params, rotated_spec):
        """Test every entry of F†(·)F has modulus 1/√6."""
        w = build_W(rotated_params.theta)
        s = completion_operator(
            build_S(rotated_params.theta_prime, rotated_params.s_branch), rotated_spec
        )
        result = check_modulus_pattern(build_F(rotated_spec), w, s)
        assert result.passed
        assert not result.mandatory

    def test_perpendicularity_relations_per_pair(self, rotated_params, default_spec, rotated_spec):
        """Test the relation list depends on the completion pair."""
        w = build_W(rotated_params.theta)
        s = build_S(rotated_params.theta_prime, rotated_params.s_branch)
        default_labels = [r[0] for r in perpendicularity_relations(w, s, default_spec)]
        rotated_labels = [r[0] for r in perpendicularity_relations(w, s, rotated_spec)]
        assert len(default_labels) == 6
        assert "w31⊥w32" in rotated_labels
        assert "w13·s11⊥w23·s21" not in rotated_labels

    def test_perpendicularity_on_valid_pair(self, closure_params, default_spec):
        """Test the relations hold on closure-valid angles."""
        w = build_W(closure_params.theta)
        s = build_S(closure_params.theta_prime, closure_params.s_branch)
        assert check_perpendicularity(w, s, default_spec).passed

    def test_modulus_pattern_fails_for_identity(self, default_spec):
        """Test W = I3 gives entries of modulus other than 1/√6."""
        result = check_modulus_pattern(
            build_F(default_spec), OperatorMatrix.identity(3), OperatorMatrix.identity(2)
        )
        assert not result.passed
        assert result.witness["block"] in ("I2⊗W", "S⊗W")

    def test_perpendicularity_fails_for_flat_W(self, default_spec):
        """Test W with every entry 1/√3 violates w11 ⊥ w22."""
        third = inv_sqrt(3, Backend.EXACT)
        w = OperatorMatrix.from_rows([[third] * 3 for _ in range(3)])
        result = check_perpendicularity(w, OperatorMatrix.identity(2), default_spec)
        assert not result.passed
        assert result.witness == {"relation": "w11⊥w22"}
        assert result.residual == pytest.approx(1 / 3)


@pytest.mark.unit
class TestThetaConditions:
    """Printed angle conditions next to the unitarity ground truth."""

    def test_valid_angles_pass_everything(self, rotated_params):
        """Test closure angles pass all four entries."""
        entries = check_theta_conditions(rotated_params)
        assert [e.passed for e in entries] == [True, True, True, True]
        assert all(not e.mandatory for e in entries)

    def test_conditions_pass_but_unitarity_fails(self):
        """Test the pairwise conditions alone do not imply unitarity."""
        params = ThetaParams.from_pi_fracs(["1", "2/3", "0", "0", "1", "1/3"], ["0", "1/2"], "-")
        entries = {e.name: e for e in check_theta_conditions(params)}
        assert entries["theta: |θ1-θ2| = π/3"].passed
        assert entries["theta: |θ4-θ5| = π"].passed
        assert entries["theta: phase relation"].passed
        ground_truth = entries["unitarity (ground truth)"]
        assert not ground_truth.passed
        assert ground_truth.witness is not None


@pytest.mark.unit
class TestVerifyPair:
    """Full verification."""

    def test_exact_pair_passes(self, exact_pair):
        """Test the first reference example passes every mandatory check exactly."""
        report = verify_pair(exact_pair)
        assert report.overall
        assert [c.name for c in report.checks if c.mandatory] == MANDATORY
        assert all(c.backend is Backend.EXACT for c in report.checks)
        assert report.find("mutually-unbiased").residual == 0.0
        assert INDEX_NOTE in report.notes

    def test_advisory_entries_present_with_provenance(self, exact_pair):
        """Test parameter conditions are reported when the pair carries its angles."""
        report = verify_pair(exact_pair)
        names = {c.name for c in report.checks if not c.mandatory}
        assert {"perpendicularity", "modulus-pattern", "unitarity (ground truth)"} <= names

    def test_no_advisory_without_provenance(self, exact_pair):
        """Test a bare pair gets only mandatory checks."""
        bare = BasisPair(exact_pair.first, exact_pair.second)
        report = verify_pair(bare)
        assert all(c.mandatory for c in report.checks)

    def test_float_pair_passes(self, float_pair):
        """Test the float pair passes within tolerance."""
        report = verify_pair(float_pair)
        assert report.overall
        assert report.find("mutually-unbiased", Backend.FLOAT).residual < 1e-12

    def test_both_backends_agree(self, exact_pair):
        """Test --backend both records both sets and an agreement entry."""
        report = verify_pair(exact_pair, VerifyConfig(backend=BackendChoice.BOTH))
        assert report.find("mutually-unbiased", Backend.EXACT) is not None
        assert report.find("mutually-unbiased", Backend.FLOAT) is not None
        agreement = report.find("backend agreement")
        assert agreement.passed

    def test_exact_refused_for_float_pair(self, float_pair):
        """Test exact verification of floating amplitudes raises."""
        with pytest.raises(ExactBackendUnavailableError):
            verify_pair(float_pair, VerifyConfig(backend=BackendChoice.EXACT))

    def test_perturbed_theta4_fails_unbiasedness(self, rotated_params, rotated_spec, fast_config):
        """Test shifting θ4 by 0.1 rad breaks unbiasedness and reports the worst pair."""
        pair = construct_pair(rotated_params.perturbed(3, 0.1), rotated_spec, unchecked=True)
        report = verify_pair(pair, fast_config)
        assert not report.overall
        assert report.find("mutually-unbiased", Backend.FLOAT).residual > 1e-3
        worst = report.worst_failure()
        assert worst is not None
        assert worst.witness is not None

    def test_perturbed_theta3_breaks_orthonormality(
        self, rotated_params, rotated_spec, fast_config
    ):
        """Test shifting θ3 keeps the overlaps at 1/6 but breaks unitarity of W."""
        pair = construct_pair(rotated_params.perturbed(2, 0.1), rotated_spec, unchecked=True)
        report = verify_pair(pair, fast_config)
        assert not report.overall
        assert report.find("mutually-unbiased").passed
        assert not report.find("orthonormal[second]").passed
        assert not report.find("unitarity (ground truth)").passed

    @pytest.mark.parametrize("index", [3, 4])
    def test_residual_grows_with_perturbation(self, rotated_params, rotated_spec, index):
        """Test the unbiasedness residual increases strictly with the θ4 and θ5 shifts."""
        residuals = []
        for delta in (1e-3, 1e-2, 1e-1):
            pair = construct_pair(
                rotated_params.perturbed(index, delta), rotated_spec, unchecked=True
            )
            residuals.append(check_mutually_unbiased(pair.first, pair.second).residual)
        assert residuals[0] < residuals[1] < residuals[2]
        assert residuals[0] > 1e-6

    def test_unbiasedness_witness_reevaluates(self, rotated_params, rotated_spec):
        """Test the reported (i, j) reproduces the residual on its own."""
        pair = construct_pair(rotated_params.perturbed(4, 0.1), rotated_spec, unchecked=True)
        result = check_mutually_unbiased(pair.first, pair.second)
        i, j = result.witness
        standalone = abs(abs(to_complex(inner(pair.first[i], pair.second[j]))) ** 2 - 1 / 6)
        assert standalone == pytest.approx(result.residual, abs=1e-14)

    def test_bell_in_complement_breaks_unextendibility(self, default_spec, fast_config):
        """Test replacing member 4 by a Bell state fails unextendibility with a witness."""
        first = list(build_first_basis(default_spec))
        first[4] = bell_state()
        pair = BasisPair(first, build_first_basis(default_spec))
        report = verify_pair(pair, fast_config)
        check = report.find("unextendible[first]")
        assert not check.passed
        assert {"t", "phi", "member", "generator"} <= set(check.witness)
        assert check.residual == check.witness["value"]
        assert "overlap" in check.detail
        assert not report.overall

    def test_input_hash_is_stable(self, exact_pair):
        """Test the report hash depends only on the pair."""
        assert verify_pair(exact_pair).input_hash == verify_pair(exact_pair).input_hash


@pytest.mark.unit
class TestReport:
    """Report container."""

    def test_overall_ignores_advisory(self):
        """Test an advisory failure does not flip the verdict."""
        report = VerificationReport()
        report.append(CheckResult("a", Backend.EXACT, True, 0.0))
        report.append(CheckResult("b", Backend.EXACT, False, 1.0, witness=[0], mandatory=False))
        assert report.overall
        assert report.worst_failure().name == "b"

    def test_to_dict_keys(self):
        """Test the machine report fields."""
        report = VerificationReport(input_hash="abc")
        report.append(CheckResult("a", Backend.FLOAT, False, 0.5, witness=[1, 2]))
        data = report.to_dict()
        assert data["overall"] is False
        assert data["input_hash"] == "abc"
        assert data["checks"][0] == {
            "name": "a",
            "backend": "float",
            "pass": False,
            "residual": 0.5,
            "witness": [1, 2],
            "mandatory": True,
        }
