import math

import numpy as np
from numpy.testing import assert_allclose
from pytest import approx, mark, raises

from channels import apply_channel, evolve_coeffs, kraus_bf, kraus_gad
from errors import NotDensityMatrix, UnphysicalCoefficients
from linalg_core import bell_states, density_spectrum, kron, projector, random_density_matrix
from measures import (
    ClassicalQuantumState, MeasurementBasis, classical_correlation, classical_correlation_bds,
    closest_classical_quantum, concurrence, concurrence_bds, concurrence_bf_analytic,
    concurrence_gad_analytic, concurrence_margin, concurrence_xxx_analytic, conditional_entropy,
    gqd1_bds, gqd1_numeric, mutual_information, mutual_information_bds, pauli_tensor, qd_bds, qd_numeric,
)
from optimizer import OptimizerConfig
from states import BellDiagonalCoeffs, bds_to_density, random_bds, thermal_xxx

SINGLET = BellDiagonalCoeffs(-1, -1, -1)
CONCURRENCE_AT_ALPHA_1 = 0.8958300


class TestConcurrence:
    @mark.parametrize("name", ["phi+", "phi-", "psi+", "psi-"])
    def test_bell_states(self, name):
        assert concurrence(projector(bell_states()[name])) == approx(1.0, abs=1e-7)

    def test_product_and_mixed(self):
        assert concurrence(np.diag([1.0, 0, 0, 0])) == 0.0
        assert concurrence(np.eye(4) / 4) == 0.0

    def test_margin_is_signed(self):
        assert concurrence_margin(np.eye(4) / 4) == approx(-0.5)

    def test_thermal_reference(self):
        assert concurrence(thermal_xxx(4.0, 1.0).rho) == approx(CONCURRENCE_AT_ALPHA_1, abs=1e-7)
        assert concurrence_xxx_analytic(1.0) == approx(CONCURRENCE_AT_ALPHA_1, abs=1e-7)

    def test_bds_form_matches_wootters(self, rng):
        for _ in range(50):
            c = random_bds(rng)
            assert concurrence(bds_to_density(c)) == approx(concurrence_bds(c), abs=1e-7)

    @mark.parametrize("J", [-4.0, -1.0, -0.1])
    @mark.parametrize("T", [0.1, 1.0, 3.0])
    def test_ferromagnet_unentangled(self, J, T):
        assert concurrence(thermal_xxx(J, T).rho) == 0.0
        assert concurrence_xxx_analytic(J / (4 * T)) == 0.0

    def test_sudden_death_threshold(self):
        threshold = math.log(3) / 4
        assert concurrence_xxx_analytic(threshold * 0.999) == 0.0
        assert concurrence_xxx_analytic(threshold * 1.001) > 0.0

    @mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_printed_noisy_forms_are_four_times_noiseless_at_zero_noise(self, alpha):
        expected = 4 * concurrence_xxx_analytic(alpha)
        assert concurrence_bf_analytic(alpha, 0.0) == approx(expected)
        assert concurrence_gad_analytic(alpha, 0.0) == approx(expected)

    def test_rejects_invalid_state(self):
        with raises(NotDensityMatrix):
            concurrence(np.eye(4))


class TestDiscordClosedForm:
    def test_singlet(self):
        assert qd_bds(SINGLET) == approx(1.0)
        assert mutual_information_bds(SINGLET) == approx(2.0)

    def test_zero_and_classical(self):
        assert qd_bds(BellDiagonalCoeffs(0, 0, 0)) == approx(0.0, abs=1e-15)
        assert qd_bds(BellDiagonalCoeffs(0, 0, 0.5)) == approx(0.0, abs=1e-15)
        assert classical_correlation_bds(BellDiagonalCoeffs(0, 0, 0.5)) == approx(1 - 0.8112781244591328)

    def test_positive_for_werner(self):
        for c in (-0.9, -0.01, 0.01, 0.3):
            assert qd_bds(BellDiagonalCoeffs(c, c, c)) > 0

    def test_unphysical(self):
        with raises(UnphysicalCoefficients):
            qd_bds(BellDiagonalCoeffs(1, 1, 1))

    def test_mutual_information_matches_matrix(self, rng):
        for _ in range(10):
            c = random_bds(rng)
            assert mutual_information(bds_to_density(c)) == approx(mutual_information_bds(c), abs=1e-12)


class TestPauliTensor:
    def test_singlet(self):
        assert_allclose(pauli_tensor(bds_to_density(SINGLET)), np.diag([1, -1, -1, -1]), atol=1e-15)

    def test_local_bloch_vectors(self):
        up = np.diag([1.0, 0.0])
        r = pauli_tensor(kron(up, np.eye(2) / 2))
        assert_allclose(r[1:, 0], [0, 0, 1], atol=1e-15)
        assert_allclose(r[0, 1:], [0, 0, 0], atol=1e-15)


class TestConditionalEntropy:
    def test_vectorised(self, rng):
        rho = random_density_matrix(4, rng)
        directions = np.array([[0, 0, 1.0], [1.0, 0, 0], [0, 1.0, 0]])
        together = conditional_entropy(rho, directions)
        apart = [conditional_entropy(rho, d)[0] for d in directions]
        assert together.shape == (3,)
        assert_allclose(together, apart)

    def test_product_state_is_unaffected(self, rng):
        a = random_density_matrix(2, rng)
        rho = kron(a, random_density_matrix(2, rng))
        values = conditional_entropy(rho, np.array([[0, 0, 1.0], [0.6, 0.8, 0]]))
        eig = np.linalg.eigvalsh(a)
        s_a = -sum(x * math.log2(x) for x in eig if x > 0)
        assert_allclose(values, s_a, atol=1e-12)


class TestDiscordNumeric:
    def test_matches_closed_form(self, rng):
        cfg = OptimizerConfig(restarts=3)
        for _ in range(10):
            c = random_bds(rng)
            assert qd_numeric(bds_to_density(c), cfg) == approx(qd_bds(c), abs=1e-6)

    def test_measures_along_largest_correlation(self):
        value, basis = classical_correlation(bds_to_density(BellDiagonalCoeffs(0.1, 0.2, -0.7)), OptimizerConfig())
        assert abs(basis.direction()[2]) == approx(1.0, abs=1e-6)
        assert value == approx(classical_correlation_bds(BellDiagonalCoeffs(0.1, 0.2, -0.7)), abs=1e-9)

    def test_product_state(self, rng):
        rho = kron(random_density_matrix(2, rng), random_density_matrix(2, rng))
        assert qd_numeric(rho, OptimizerConfig(restarts=2)) == approx(0.0, abs=1e-8)

    def test_general_state_bounds(self, rng):
        cfg = OptimizerConfig(restarts=2)
        for _ in range(3):
            rho = random_density_matrix(4, rng)
            value = qd_numeric(rho, cfg)
            assert 0.0 <= value <= mutual_information(rho) + 1e-12

    def test_deterministic(self, rng):
        rho = random_density_matrix(4, rng)
        cfg = OptimizerConfig(seed=5, restarts=3)
        assert qd_numeric(rho, cfg) == qd_numeric(rho, cfg)


class TestGeometricDiscord:
    @mark.parametrize("coeffs, expected", [((0.5, -0.3, 0.1), 0.3), ((-1, -1, -1), 1.0), ((0, 0, 0.9), 0.0)])
    def test_median(self, coeffs, expected):
        assert gqd1_bds(BellDiagonalCoeffs(*coeffs)) == approx(expected)

    def test_numeric_is_tight_upper_bound(self, rng, fast_optimizer):
        for _ in range(5):
            c = random_bds(rng)
            value = gqd1_numeric(bds_to_density(c), fast_optimizer)
            assert gqd1_bds(c) - 1e-9 <= value <= gqd1_bds(c) + 1e-3

    def test_classical_quantum_input(self, rng, fast_optimizer):
        rho = kron(np.diag([0.3, 0.7]), random_density_matrix(2, rng))
        assert gqd1_numeric(rho, fast_optimizer) == approx(0.0, abs=1e-9)

    def test_returned_state_is_classical_quantum(self, rng, fast_optimizer):
        rho = random_density_matrix(4, rng)
        distance, state = closest_classical_quantum(rho, fast_optimizer)
        sigma = state.density()
        density_spectrum(sigma)
        assert distance == approx(np.sum(np.abs(np.linalg.eigvalsh(rho - sigma))))

    def test_parameters_are_clipped(self):
        state = ClassicalQuantumState.from_parameters([0.3, 1.0, 1.4, 2, 0, 0, 0, 0, 0])
        assert state.q == 1.0
        assert np.linalg.norm(state.bloch0) == approx(1.0)

    def test_basis_from_vector(self):
        basis = MeasurementBasis.from_vector([0, 0, -2.0])
        assert basis.theta == approx(math.pi)
        plus, minus = basis.projectors()
        assert_allclose(plus + minus, np.eye(2), atol=1e-15)


class TestNoisyThermalStates:
    def test_bf_reference_point(self):
        coeffs = evolve_coeffs(thermal_xxx(4.0, 1.0).coeffs, kraus_bf(0.5))
        assert gqd1_bds(coeffs) == approx(0.2326383, abs=1e-7)
        # Under BF the median |c| dominates the discord
        assert gqd1_bds(coeffs) > qd_bds(coeffs)

    @mark.parametrize("channel", [kraus_bf(0.5), kraus_gad(0.5, 0.5)])
    def test_wootters_agrees_with_bell_weights(self, channel):
        state = thermal_xxx(2.0, 0.5)
        rho = apply_channel(state.rho, channel)
        coeffs = evolve_coeffs(state.coeffs, channel)
        assert concurrence(rho) == approx(concurrence_bds(coeffs), abs=1e-9)
