import numpy as np
import pytest

from helpers import max_abs_diff, random_density, random_pure, random_unitary
from nmrsim.core import (
    EXPERIMENTAL,
    PAULI_1Q,
    STRICT,
    basis_state,
    bell_state,
    check_unitary,
    density_from_pure,
    evolve,
    fidelity,
    pure_state,
    purity,
    tensor,
    trace_distance,
    validate_density,
    validate_unitary,
)
from nmrsim.errors import (
    BadTraceError,
    DimMismatchError,
    DimNotPowerOfTwoError,
    NotHermitianError,
    NotNormalizedError,
    NotPsdError,
    NotSquareError,
    NotUnitaryError,
)
from nmrsim.repro import load_dataset


class TestValidateDensity:
    def test_maximally_mixed_is_strict_valid(self):
        rho = validate_density(np.eye(4) / 4, STRICT)
        assert rho.dim == 4
        assert rho.n_qubits == 2

    def test_printed_experimental_matrix_validates(self):
        # 4-decimal instrument data: passes only under the experimental profile
        ds = load_dataset()
        rho = validate_density(ds.rho_initial, EXPERIMENTAL)
        assert abs(np.trace(rho.matrix) - 1.0) < 1e-12
        with pytest.raises(NotPsdError):
            validate_density(ds.rho_initial, STRICT)

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(NotPsdError) as exc:
            validate_density(np.diag([0.6, 0.6, -0.1, -0.1]), STRICT)
        assert exc.value.min_eigenvalue == pytest.approx(-0.1, abs=1e-12)

    def test_not_square(self):
        with pytest.raises(NotSquareError):
            validate_density(np.ones((2, 3)), STRICT)

    def test_dim_not_power_of_two(self):
        with pytest.raises(DimNotPowerOfTwoError):
            validate_density(np.eye(3) / 3, STRICT)

    def test_not_hermitian(self):
        m = np.eye(2, dtype=complex) / 2
        m[0, 1] = 0.5
        with pytest.raises(NotHermitianError) as exc:
            validate_density(m, STRICT)
        assert exc.value.deviation == pytest.approx(0.5)

    def test_bad_trace(self):
        with pytest.raises(BadTraceError) as exc:
            validate_density(np.eye(2), STRICT)
        assert exc.value.deviation == pytest.approx(1.0)

    def test_matrix_is_read_only(self):
        rho = validate_density(np.eye(2) / 2, STRICT)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestEvolve:
    def test_identity_state_commutes(self):
        ds = load_dataset()
        rho = validate_density(np.eye(4) / 4, STRICT)
        out = evolve(rho, ds.c_corrected)
        assert max_abs_diff(out.matrix, np.eye(4) / 4) < 1e-15

    def test_bit_flip_on_first_qubit(self):
        rho = density_from_pure(basis_state(2, 0))
        u = validate_unitary(tensor(PAULI_1Q["X"], PAULI_1Q["I"]))
        out = evolve(rho, u)
        expected = density_from_pure(basis_state(2, 2))
        assert max_abs_diff(out.matrix, expected.matrix) == 0.0

    def test_dim_mismatch(self):
        rho = validate_density(np.eye(2) / 2, STRICT)
        u = validate_unitary(np.eye(4))
        with pytest.raises(DimMismatchError):
            evolve(rho, u)

    @pytest.mark.parametrize("dim", [2, 4, 8])
    def test_random_evolution_properties(self, dim):
        rng = np.random.default_rng(101 + dim)
        for _ in range(20):
            rho = random_density(rng, dim)
            u = random_unitary(rng, dim)
            out = evolve(rho, u)
            assert abs(np.trace(out.matrix) - 1.0) < 1e-12
            ev_in = np.sort(np.linalg.eigvalsh(rho.matrix))
            ev_out = np.sort(np.linalg.eigvalsh(out.matrix))
            assert max_abs_diff(ev_in, ev_out) < 1e-9
            undone = evolve(out, validate_unitary(u.matrix.conj().T))
            assert max_abs_diff(undone.matrix, rho.matrix) < 1e-10
            # strict validation accepts everything evolve produces
            validate_density(out.matrix, STRICT)


class TestFidelityAndTraceDistance:
    def test_self_fidelity(self):
        rng = np.random.default_rng(7)
        rho = random_density(rng, 4)
        assert fidelity(rho, rho) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_pure_states(self):
        a = density_from_pure(basis_state(2, 0))
        b = density_from_pure(basis_state(2, 3))
        assert fidelity(a, b) == pytest.approx(0.0, abs=1e-12)
        assert trace_distance(a, b) == pytest.approx(1.0, abs=1e-12)

    def test_mixed_vs_pure_closed_form(self):
        # for pure sigma, fidelity reduces to tr(rho sigma) = 1/4
        mixed = validate_density(np.eye(4) / 4, STRICT)
        pure = density_from_pure(basis_state(2, 0))
        assert fidelity(mixed, pure) == pytest.approx(0.25, abs=1e-12)

    def test_trace_distance_half_mixed(self):
        # eigenvalues of I/2 - |0><0| are (-1/2, 1/2)
        mixed = validate_density(np.eye(2) / 2, STRICT)
        zero = density_from_pure(basis_state(1, 0))
        assert trace_distance(mixed, zero) == pytest.approx(0.5, abs=1e-12)

    def test_symmetry_and_bounds(self):
        # fidelity here is the squared convention, so the distance bounds
        # read 1 - sqrt(F) <= T <= sqrt(1 - F)
        rng = np.random.default_rng(11)
        for _ in range(25):
            rho = random_density(rng, 4)
            sigma = random_density(rng, 4)
            f_ab = fidelity(rho, sigma)
            f_ba = fidelity(sigma, rho)
            assert abs(f_ab - f_ba) < 1e-9
            t = trace_distance(rho, sigma)
            assert 1 - np.sqrt(f_ab) <= t + 1e-9
            assert t <= np.sqrt(1 - f_ab) + 1e-9

    def test_unity_iff_equal(self):
        rng = np.random.default_rng(13)
        rho = random_density(rng, 4)
        sigma = random_density(rng, 4)
        assert fidelity(rho, sigma) < 1.0 - 1e-6
        assert trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-12)

    def test_dim_mismatch(self):
        a = validate_density(np.eye(2) / 2, STRICT)
        b = validate_density(np.eye(4) / 4, STRICT)
        with pytest.raises(DimMismatchError):
            fidelity(a, b)
        with pytest.raises(DimMismatchError):
            trace_distance(a, b)


class TestTensor:
    def test_identity(self):
        assert max_abs_diff(tensor(PAULI_1Q["I"], PAULI_1Q["I"]), np.eye(4)) == 0.0

    def test_z_times_identity(self):
        assert max_abs_diff(tensor(PAULI_1Q["Z"], PAULI_1Q["I"]), np.diag([1, 1, -1, -1])) == 0.0

    def test_xx_flips_basis_state(self):
        xx = tensor(PAULI_1Q["X"], PAULI_1Q["X"])
        out = xx @ basis_state(2, 0).amplitudes
        assert max_abs_diff(out, basis_state(2, 3).amplitudes) == 0.0

    def test_associative_on_exact_inputs(self):
        a, b, c = PAULI_1Q["X"], PAULI_1Q["Y"], PAULI_1Q["Z"]
        left = tensor(tensor(a, b), c)
        right = tensor(a, tensor(b, c))
        assert np.array_equal(left, right)


class TestCheckUnitary:
    def test_identity(self):
        ok, defect = check_unitary(np.eye(4), 1e-12)
        assert ok and defect == 0.0

    def test_corrected_step_matrix(self):
        # entries are exact binary fractions, so the defect is exactly zero
        ds = load_dataset()
        ok, defect = check_unitary(ds.c_corrected.matrix, 1e-12)
        assert ok
        assert defect <= 1e-15

    def test_raw_step_matrix_fails(self):
        ds = load_dataset()
        ok, defect = check_unitary(ds.c_raw, 1e-6)
        assert not ok
        assert defect > 0.1

    def test_not_square(self):
        with pytest.raises(NotSquareError):
            check_unitary(np.ones((2, 3)))

    def test_validate_unitary_rejects(self):
        with pytest.raises(NotUnitaryError) as exc:
            validate_unitary(np.eye(2) * 2)
        assert exc.value.defect == pytest.approx(3.0)


class TestPureStates:
    def test_norm_enforced(self):
        with pytest.raises(NotNormalizedError):
            pure_state([1.0, 1.0])

    def test_bell_states_normalized_and_orthogonal(self):
        kinds = ["phi+", "phi-", "psi+", "psi-"]
        states = [bell_state(k) for k in kinds]
        for i, a in enumerate(states):
            for j, b in enumerate(states):
                ip = abs(np.vdot(a.amplitudes, b.amplitudes))
                assert ip == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)

    def test_unknown_bell_kind(self):
        with pytest.raises(ValueError):
            bell_state("sigma+")

    def test_purity_of_pure_and_mixed(self):
        assert purity(density_from_pure(bell_state("phi+"))) == pytest.approx(1.0, abs=1e-12)
        assert purity(validate_density(np.eye(4) / 4, STRICT)) == pytest.approx(0.25, abs=1e-12)

    def test_strict_accepts_pure_projectors(self):
        rng = np.random.default_rng(17)
        for dim in (2, 4, 8):
            psi = random_pure(rng, dim)
            validate_density(density_from_pure(psi).matrix, STRICT)


def test_eigendecomposition_accuracy_up_to_dim_8():
    # the dense solver must reassemble Hermitian matrices to 1e-10 relative
    rng = np.random.default_rng(19)
    for dim in (2, 4, 8):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = (g + g.conj().T) / 2
        w, v = np.linalg.eigh(h)
        back = (v * w) @ v.conj().T
        scale = float(np.max(np.abs(h)))
        assert max_abs_diff(back, h) / scale < 1e-10
