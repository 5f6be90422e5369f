import numpy as np
import pytest

from helpers import max_abs_diff, random_density, random_pure
from nmrsim.core import (
    STRICT,
    basis_state,
    bell_state,
    density_from_pure,
    pure_state,
    tensor,
    validate_density,
)
from nmrsim.errors import NotPureError, WrongDimError
from nmrsim.pseudopure import compose_pseudopure
from nmrsim.separability import (
    critical_epsilon,
    critical_epsilon_bisection,
    is_separable_2q,
    partial_transpose,
    ppt_first_vs_rest,
)


class TestPartialTranspose:
    def test_identity_fixed(self):
        rho = validate_density(np.eye(4) / 4, STRICT)
        assert max_abs_diff(partial_transpose(rho, "B"), np.eye(4) / 4) == 0.0

    def test_diagonal_product_state_fixed(self):
        rho = density_from_pure(basis_state(2, 0))
        assert max_abs_diff(partial_transpose(rho, "B"), rho.matrix) == 0.0

    def test_bell_spectrum(self):
        rho = density_from_pure(bell_state("phi+"))
        eigs = np.sort(np.linalg.eigvalsh(partial_transpose(rho, "B")))
        assert max_abs_diff(eigs, [-0.5, 0.5, 0.5, 0.5]) < 1e-12

    @pytest.mark.parametrize("subsystem", ["A", "B"])
    def test_involution_trace_hermiticity(self, subsystem):
        rng = np.random.default_rng(61)
        for _ in range(20):
            rho = random_density(rng, 4)
            pt = partial_transpose(rho, subsystem)
            assert abs(np.trace(pt) - np.trace(rho.matrix)) == 0.0
            assert max_abs_diff(pt, pt.conj().T) == 0.0
            twice = partial_transpose(_rewrap(pt), subsystem)
            assert np.array_equal(twice, rho.matrix)

    def test_wrong_dim(self):
        with pytest.raises(WrongDimError):
            partial_transpose(validate_density(np.eye(2) / 2, STRICT), "B")

    def test_bad_subsystem(self):
        rho = validate_density(np.eye(4) / 4, STRICT)
        with pytest.raises(ValueError):
            partial_transpose(rho, "C")


def _rewrap(pt):
    # partial transposes of entangled states are not PSD, so rewrap without
    # validation for the involution test
    from nmrsim.core import DensityMatrix

    return DensityMatrix(pt, 4, 2)


class TestPptReport:
    def test_maximally_mixed_is_ppt(self):
        rep = is_separable_2q(validate_density(np.eye(4) / 4, STRICT))
        assert rep.is_ppt

    def test_bell_is_not_ppt(self):
        rep = is_separable_2q(density_from_pure(bell_state("phi+")))
        assert not rep.is_ppt
        assert rep.min_eigenvalue == pytest.approx(-0.5, abs=1e-12)

    def test_weakly_mixed_bell_is_ppt(self):
        rho = compose_pseudopure(0.2, density_from_pure(bell_state("phi+")))
        assert is_separable_2q(rho).is_ppt

    def test_report_consistency(self):
        rep = is_separable_2q(validate_density(np.eye(4) / 4, STRICT), tol=1e-10)
        assert rep.is_ppt == (rep.min_eigenvalue >= -rep.tolerance)

    def test_wrong_dim(self):
        with pytest.raises(WrongDimError):
            is_separable_2q(validate_density(np.eye(8) / 8, STRICT))


class TestPptFirstVsRest:
    def test_ghz_fails(self):
        ghz = np.zeros(8, dtype=complex)
        ghz[0] = ghz[7] = np.sqrt(0.5)
        rho = density_from_pure(pure_state(ghz))
        assert not ppt_first_vs_rest(rho).is_ppt

    def test_product_across_cut_passes(self):
        psi = pure_state(np.kron(basis_state(1, 0).amplitudes, bell_state("phi+").amplitudes))
        rho = density_from_pure(psi)
        assert ppt_first_vs_rest(rho).is_ppt

    def test_matches_2q_result(self):
        rng = np.random.default_rng(67)
        for _ in range(10):
            rho = random_density(rng, 4)
            a = is_separable_2q(rho)
            b = ppt_first_vs_rest(rho)
            assert abs(a.min_eigenvalue - b.min_eigenvalue) < 1e-12


class TestCriticalEpsilon:
    def test_bell_threshold(self):
        rho1 = density_from_pure(bell_state("phi+"))
        assert critical_epsilon(rho1) == pytest.approx(1 / 3, abs=1e-9)
        assert critical_epsilon_bisection(rho1) == pytest.approx(1 / 3, abs=1e-9)

    def test_product_target_always_separable(self):
        rho1 = density_from_pure(basis_state(2, 0))
        assert critical_epsilon(rho1) == 1.0
        assert critical_epsilon_bisection(rho1) == 1.0

    def test_partially_entangled_target(self):
        # Schmidt form sqrt(0.9)|00> + sqrt(0.1)|11>: the partial transpose
        # of the projector has min eigenvalue -sqrt(0.9 * 0.1) = -0.3
        amps = np.zeros(4)
        amps[0], amps[3] = np.sqrt(0.9), np.sqrt(0.1)
        rho1 = density_from_pure(pure_state(amps))
        expected = 1.0 / (1.0 + 4.0 * np.sqrt(0.09))
        assert critical_epsilon(rho1) == pytest.approx(expected, abs=1e-9)
        assert critical_epsilon_bisection(rho1) == pytest.approx(expected, abs=1e-9)

    def test_monotone_ppt_across_threshold(self):
        rho1 = density_from_pure(bell_state("phi+"))
        eps_star = critical_epsilon(rho1)
        for eps in np.linspace(0.0, 1.0, 100):
            verdict = is_separable_2q(compose_pseudopure(float(eps), rho1)).is_ppt
            if eps <= eps_star:
                assert verdict
            elif eps > eps_star + 1e-9:
                assert not verdict

    def test_closed_form_matches_bisection_on_random_targets(self):
        rng = np.random.default_rng(71)
        for _ in range(50):
            rho1 = density_from_pure(random_pure(rng, 4))
            assert abs(critical_epsilon(rho1) - critical_epsilon_bisection(rho1)) < 1e-9

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(73)
        for _ in range(20):
            rho1 = density_from_pure(random_pure(rng, 4))
            ua, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
            ub, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
            u = tensor(ua, ub)
            rotated = validate_density(u @ rho1.matrix @ u.conj().T, STRICT)
            assert abs(critical_epsilon(rho1) - critical_epsilon(rotated)) < 1e-9

    def test_requires_pure_target(self):
        with pytest.raises(NotPureError):
            critical_epsilon(validate_density(np.eye(4) / 4, STRICT))

    def test_requires_two_qubits(self):
        with pytest.raises(WrongDimError):
            critical_epsilon(density_from_pure(basis_state(1, 0)))
