import numpy as np
import pytest

from gme_ising import (
    OptimizerConfig,
    QuantumState,
    TfimParams,
    ValidationError,
    analytic_ground_state_3,
    analytic_ground_state_4,
    build_hamiltonian,
    ground_state,
    maximize,
)
from gme_ising.tfim import analytic_coefficients, analytic_ground_state_4_unnormalized, parity_diagonal

from conftest import h3_golden

H_GRID = [0.1 * k for k in range(1, 21)]


class TestHamiltonian:
    @pytest.mark.parametrize("h", [0.0, 0.5, 1.0, 2.0, 0.37])
    def test_three_site_matrix(self, h):
        np.testing.assert_array_equal(build_hamiltonian(3, h), h3_golden(h))

    def test_named_entries(self):
        m = build_hamiltonian(TfimParams(3, 0.7))
        assert m[0, 0] == pytest.approx(-2.1)
        assert m[0, 3] == -1 and m[0, 7] == 0

    def test_zero_field_diagonal(self):
        assert np.all(np.diag(build_hamiltonian(3, 0.0)) == 0)

    def test_four_site_minimum_matches_closed_form(self):
        m = build_hamiltonian(4, 1.0)
        psi = analytic_ground_state_4(1.0).amplitudes
        assert np.linalg.eigvalsh(m)[0] == pytest.approx(np.vdot(psi, m @ psi).real, abs=1e-9)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_commutes_with_parity(self, n):
        m = build_hamiltonian(n, 0.83)
        p = np.diag(parity_diagonal(n)).astype(float)
        assert np.linalg.norm(m @ p - p @ m) <= 1e-12
        np.testing.assert_array_equal(m, m.T)

    @pytest.mark.parametrize("n,h", [(2, 1.0), (13, 1.0), (3, -0.1), (3, np.inf), (3.5, 1.0)])
    def test_invalid_params(self, n, h):
        with pytest.raises(ValidationError):
            TfimParams(n, h)


class TestGroundState:
    def test_zero_field_limit(self):
        s, e, _ = ground_state(3, 0.0)
        expected = np.zeros(8)
        expected[[0, 3, 5, 6]] = 0.5
        np.testing.assert_allclose(s.amplitudes, expected, atol=1e-12)
        assert e == pytest.approx(-3)
        # equals (|+++> + |--->)/sqrt(2)
        plus = np.array([1, 1]) / np.sqrt(2)
        minus = np.array([1, -1]) / np.sqrt(2)
        ghz_x = (np.kron(np.kron(plus, plus), plus) + np.kron(np.kron(minus, minus), minus)) / np.sqrt(2)
        assert s.fidelity(ghz_x) == pytest.approx(1, abs=1e-12)
        assert np.vdot(s.amplitudes, h3_golden(0) @ s.amplitudes).real == pytest.approx(-3)

    def test_strong_field_polarizes(self):
        s, _, _ = ground_state(3, 100.0)
        assert s.fidelity(QuantumState.basis("000")) >= 0.9999

    def test_critical_field(self):
        s, _, _ = ground_state(3, 1.0)
        ref = np.array([3, 0, 0, 1, 0, 1, 1, 0]) / np.sqrt(12)
        assert s.fidelity(ref) >= 1 - 1e-10

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_nondegenerate_for_positive_field(self, n):
        for h in np.linspace(0.1, 2.0, 20):
            _, _, gap = ground_state(n, h)
            assert gap > 0

    @pytest.mark.parametrize("n", [3, 4])
    def test_energy_non_increasing_in_field(self, n):
        energies = [ground_state(n, h)[1] for h in np.linspace(0, 2, 41)]
        assert np.all(np.diff(energies) <= 1e-12)

    def test_returns_global_minimum(self):
        for n, h in [(5, 0.3), (6, 1.7)]:
            _, e, _ = ground_state(n, h)
            assert e == pytest.approx(np.linalg.eigvalsh(build_hamiltonian(n, h))[0], abs=1e-10)

    def test_tiny_field_uses_even_sector(self):
        # splitting is ~h**N here, far below any reasonable gap tolerance
        s, _, gap = ground_state(5, 1e-4)
        assert gap < 1e-9
        assert s.fidelity(ground_state(5, 0.0)[0]) > 1 - 1e-6


class TestClosedForms:
    def test_three_site_coefficients(self):
        c = analytic_coefficients(0.0)
        assert c.gamma1 == pytest.approx(1) and c.norm1 == pytest.approx(4)
        np.testing.assert_allclose(analytic_ground_state_3(0.0).amplitudes[[0, 3, 5, 6]], 0.5)
        np.testing.assert_allclose(
            analytic_ground_state_3(1.0).amplitudes[[0, 3, 5, 6]], np.array([3, 1, 1, 1]) / np.sqrt(12)
        )

    def test_three_site_support(self):
        a = analytic_ground_state_3(0.8).amplitudes
        assert set(np.flatnonzero(a)) == {0, 3, 5, 6}

    def test_four_site_zero_field(self):
        a = analytic_ground_state_4(0.0).amplitudes
        support = [0b0000, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 0b1111]
        np.testing.assert_allclose(a[support], 1 / np.sqrt(8), atol=1e-15)
        assert np.count_nonzero(a) == 8

    @pytest.mark.parametrize("h", [0.0, 0.1, 0.935, 1.0, 3.0, 25.0])
    def test_four_site_normalization_constant(self, h):
        psi, norm2 = analytic_ground_state_4_unnormalized(h)
        assert np.sum(np.abs(psi) ** 2) == pytest.approx(norm2, rel=1e-13)

    @pytest.mark.parametrize("h", [0.25, 0.5, 1.375, 2.0] + H_GRID)
    def test_three_site_matches_eigensolver(self, h):
        assert analytic_ground_state_3(h).fidelity(ground_state(3, h)[0]) >= 1 - 1e-10

    @pytest.mark.parametrize("h", [0.25, 0.935, 1.0, 2.0] + H_GRID)
    def test_four_site_matches_eigensolver(self, h):
        assert analytic_ground_state_4(h).fidelity(ground_state(4, h)[0]) >= 1 - 1e-10

    def test_negative_field_rejected(self):
        with pytest.raises(ValidationError):
            analytic_ground_state_3(-1)
        with pytest.raises(ValidationError):
            analytic_ground_state_4(-1)

    def test_four_site_zero_field_reaches_sqrt2(self):
        value = maximize(analytic_ground_state_4(0.0), "minus", OptimizerConfig(restarts=16)).value
        assert value == pytest.approx(np.sqrt(2), abs=1e-6)
