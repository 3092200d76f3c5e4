import numpy as np
import pytest

from conftest import random_coefficients
from ptthermo import (
    CoefficientMatrix,
    InvalidStateError,
    PTParams,
    build_pt_hamiltonian,
    build_rho_g,
    coefficients_from_matrix,
    energy_eigensystem,
    generalized_expectation,
    initial_state,
    lambda_closed_form,
    lambda_eigenvalues,
    passive_state,
    rho_g_closed_form,
)

R_GRID = [0.0, 0.2, 0.5, 0.7, 0.95, -0.3, -0.6]


def system(r, s=1.0):
    h = build_pt_hamiltonian(PTParams(r, s))
    return h, energy_eigensystem(h)


class TestCoefficientMatrix:
    def test_valid(self):
        c = CoefficientMatrix(0.25, 0.1j, -0.1j, 0.75)
        assert c.c11 == 0.25
        assert c.c21 == np.conj(c.c12)

    def test_trace_enforced(self):
        with pytest.raises(InvalidStateError, match="trace"):
            CoefficientMatrix(0.5, 0, 0, 0.6)

    def test_hermiticity_enforced(self):
        with pytest.raises(InvalidStateError, match="conj"):
            CoefficientMatrix(0.5, 0.2, 0.3, 0.5)

    def test_population_range_enforced(self):
        with pytest.raises(InvalidStateError, match="populations"):
            CoefficientMatrix(-0.2, 0, 0, 1.2)

    def test_positivity_enforced(self):
        with pytest.raises(InvalidStateError, match="determinant"):
            CoefficientMatrix(0.5, 0.6, 0.6, 0.5)

    def test_diagonal_drift_discarded(self):
        c = CoefficientMatrix(0.5 + 1e-12j, 0, 0, 0.5 - 1e-12j)
        assert c.c11.imag == 0.0

    def test_large_drift_rejected(self):
        with pytest.raises(InvalidStateError, match="imaginary"):
            CoefficientMatrix(0.5 + 1e-6j, 0, 0, 0.5 - 1e-6j)


class TestBuildRhoG:
    def test_pure_excited_is_projector(self):
        _, esys = system(0.0)
        g = initial_state("excited", esys)
        projector = np.outer(esys.ket_Eplus, esys.dual_Eplus.conj())
        assert np.max(np.abs(g.matrix - projector)) < 1e-14
        assert abs(np.trace(g.matrix) - 1) < 1e-14

    @pytest.mark.parametrize("r", R_GRID)
    def test_maximally_mixed_is_identity_over_two(self, r):
        _, esys = system(r)
        g = build_rho_g(CoefficientMatrix(0.5, 0, 0, 0.5), esys)
        assert np.max(np.abs(g.matrix - np.eye(2) / 2)) < 1e-12

    def test_ground_matches_element_formulas(self):
        # hand-evaluated first entry for the ground projector at r=0.5, s=1:
        # (2 - 2 i r / sqrt(s^2 - r^2)) / 4
        _, esys = system(0.5)
        g = initial_state("ground", esys)
        expected_11 = 0.5 - 0.25j / np.sqrt(0.75)
        assert abs(g.matrix[0, 0] - expected_11) < 1e-14

    @pytest.mark.parametrize("r", R_GRID)
    def test_two_construction_paths_agree(self, r):
        _, esys = system(r)
        rng = np.random.default_rng(42)
        for _ in range(50):
            coeffs = random_coefficients(rng)
            g = build_rho_g(coeffs, esys)
            closed = rho_g_closed_form(coeffs, esys.params)
            assert np.max(np.abs(g.matrix - closed)) < 1e-12
            assert abs(np.trace(g.matrix) - 1.0) < 1e-10

    def test_roundtrip_through_matrix(self):
        _, esys = system(0.6)
        rng = np.random.default_rng(1)
        for _ in range(25):
            coeffs = random_coefficients(rng)
            g = build_rho_g(coeffs, esys)
            back = coefficients_from_matrix(esys, g.matrix)
            assert abs(back.c11 - coeffs.c11) < 1e-12
            assert abs(back.c12 - coeffs.c12) < 1e-12


class TestLambdaEigenvalues:
    def test_pure_excited(self):
        _, esys = system(0.3)
        g = initial_state("excited", esys)
        assert lambda_eigenvalues(g) == pytest.approx((1.0, 0.0), abs=1e-12)

    def test_maximally_mixed_generic_point(self):
        _, esys = system(0.5)
        g = build_rho_g(CoefficientMatrix(0.5, 0, 0, 0.5), esys)
        assert lambda_eigenvalues(g) == pytest.approx((0.5, 0.5), abs=1e-12)

    def test_intermediate_state_is_pure(self):
        _, esys = system(0.0)
        g = initial_state("intermediate", esys)
        assert lambda_eigenvalues(g) == pytest.approx((1.0, 0.0), abs=1e-10)

    @pytest.mark.parametrize("r", R_GRID)
    def test_closed_form_matches_numerics(self, r):
        _, esys = system(r)
        rng = np.random.default_rng(77)
        for _ in range(40):
            g = build_rho_g(random_coefficients(rng), esys)
            lam_plus, lam_minus = lambda_eigenvalues(g)
            numeric = np.sort(np.linalg.eigvals(g.matrix).real)[::-1]
            assert abs(lam_plus - numeric[0]) < 1e-10
            assert abs(lam_minus - numeric[1]) < 1e-10
            assert lam_plus + lam_minus == pytest.approx(1.0, abs=1e-12)


class TestPassiveState:
    def test_pure_excited_swaps_to_ground(self):
        h, esys = system(0.4)
        g = initial_state("excited", esys)
        p = passive_state(g)
        energy = generalized_expectation(h.matrix, p)
        assert energy.real == pytest.approx(-esys.energy_abs, abs=1e-12)
        assert abs(energy.imag) < 1e-12

    def test_maximally_mixed_unchanged(self):
        _, esys = system(0.4)
        g = build_rho_g(CoefficientMatrix(0.5, 0, 0, 0.5), esys)
        assert np.max(np.abs(passive_state(g).matrix - g.matrix)) < 1e-12

    def test_larger_population_on_ground(self):
        _, esys = system(0.2)
        g = build_rho_g(CoefficientMatrix(0.2, 0, 0, 0.8), esys)
        p = passive_state(g)
        assert p.coeffs.c11.real == pytest.approx(0.8, abs=1e-12)
        assert p.coeffs.c22.real == pytest.approx(0.2, abs=1e-12)

    @pytest.mark.parametrize("r", R_GRID)
    def test_passivity(self, r):
        h, esys = system(r)
        rng = np.random.default_rng(5)
        for _ in range(25):
            g = build_rho_g(random_coefficients(rng), esys)
            active = generalized_expectation(h.matrix, g).real
            passive = generalized_expectation(h.matrix, passive_state(g)).real
            assert passive <= active + 1e-12


class TestExpectation:
    def test_excited_energy(self):
        h, esys = system(0.3)
        g = initial_state("excited", esys)
        value = generalized_expectation(h.matrix, g)
        assert value == pytest.approx(esys.energy_abs, abs=1e-12)

    def test_trace_normalization(self):
        _, esys = system(0.3)
        g = initial_state("intermediate", esys)
        assert generalized_expectation(np.eye(2), g) == pytest.approx(1.0, abs=1e-12)

    def test_intermediate_energy(self):
        h, esys = system(0.5)
        g = initial_state("intermediate", esys)
        value = generalized_expectation(h.matrix, g)
        assert value.real == pytest.approx(-np.sqrt(0.3) / 2, abs=1e-12)


class TestInitialStates:
    def test_ground_hermitian_limit(self):
        _, esys = system(0.0)
        g = initial_state("ground", esys)
        assert np.max(np.abs(g.matrix - g.matrix.conj().T)) < 1e-14

    def test_intermediate_trace_one(self):
        _, esys = system(0.5)
        g = initial_state("intermediate", esys)
        assert abs(np.trace(g.matrix) - 1.0) < 1e-12
        assert g.coeffs.c11.real == pytest.approx(0.75)
        assert g.coeffs.c12 == pytest.approx(np.sqrt(3) / 4)

    def test_unknown_kind(self):
        _, esys = system(0.5)
        with pytest.raises(ValueError, match="unknown initial state"):
            initial_state("warm", esys)


class TestClosedFormHelpers:
    def test_lambda_closed_form_plain(self):
        lam = lambda_closed_form(CoefficientMatrix(0.3, 0.1, 0.1, 0.7))
        det = 0.3 * 0.7 - 0.01
        expected_hi = 0.5 + 0.5 * np.sqrt(1 - 4 * det)
        assert lam == pytest.approx((expected_hi, 1 - expected_hi), abs=1e-14)
