import numpy as np
import pytest

from conftest import random_coefficients
from ptthermo import (
    BrokenPhaseError,
    CoefficientMatrix,
    PTParams,
    build_pt_hamiltonian,
    build_rho_g,
    energy_eigensystem,
    ergotropy_closed_form,
    ergotropy_numeric,
    initial_state,
    passive_state,
)

EXCITED = CoefficientMatrix(0.0, 0.0, 0.0, 1.0)
GROUND = CoefficientMatrix(1.0, 0.0, 0.0, 0.0)
MIXED = CoefficientMatrix(0.5, 0.0, 0.0, 0.5)


def system(r, s=1.0):
    h = build_pt_hamiltonian(PTParams(r, s))
    return h, energy_eigensystem(h)


class TestClosedForm:
    def test_excited_hermitian_limit(self):
        assert ergotropy_closed_form(EXCITED, PTParams(0.0, 1.0)) == pytest.approx(
            np.sqrt(2), abs=1e-12
        )

    def test_ground_gives_zero(self):
        assert ergotropy_closed_form(GROUND, PTParams(0.0, 1.0)) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_gives_zero(self):
        assert ergotropy_closed_form(MIXED, PTParams(0.4, 1.0)) == pytest.approx(0.0, abs=1e-12)

    def test_excited_generic_point(self):
        assert ergotropy_closed_form(EXCITED, PTParams(0.5, 1.0)) == pytest.approx(
            2 * np.sqrt(0.3), abs=1e-12
        )

    def test_broken_phase_rejected(self):
        with pytest.raises(BrokenPhaseError):
            ergotropy_closed_form(EXCITED, PTParams(1.5, 1.0))


class TestNumeric:
    def test_excited_twice_energy(self):
        h, esys = system(0.5)
        result = ergotropy_numeric(initial_state("excited", esys), h)
        assert result.work == pytest.approx(2 * np.sqrt(0.3), abs=1e-12)
        assert result.active_energy == pytest.approx(np.sqrt(0.3), abs=1e-12)
        assert result.passive_energy == pytest.approx(-np.sqrt(0.3), abs=1e-12)

    def test_intermediate_hermitian_limit(self):
        h, esys = system(0.0)
        result = ergotropy_numeric(initial_state("intermediate", esys), h)
        assert result.work == pytest.approx(esys.energy_abs / 2, abs=1e-12)

    def test_passive_input_gives_zero(self):
        h, esys = system(0.3)
        rng = np.random.default_rng(2)
        g = build_rho_g(random_coefficients(rng), esys)
        result = ergotropy_numeric(passive_state(g), h)
        assert abs(result.work) < 1e-10

    @pytest.mark.parametrize("r", [0.0, 0.2, 0.5, 0.8, 0.95])
    def test_matches_closed_form(self, r):
        h, esys = system(r)
        rng = np.random.default_rng(9)
        for _ in range(30):
            coeffs = random_coefficients(rng)
            g = build_rho_g(coeffs, esys)
            numeric = ergotropy_numeric(g, h).work
            closed = ergotropy_closed_form(coeffs, h.params)
            assert abs(numeric - closed) < 1e-10
            assert numeric >= -1e-10

    def test_monotone_decrease_with_r(self):
        values = [
            ergotropy_closed_form(EXCITED, PTParams(r, 1.0))
            for r in np.linspace(0.0, 0.95, 20)
        ]
        assert all(b < a for a, b in zip(values, values[1:]))
