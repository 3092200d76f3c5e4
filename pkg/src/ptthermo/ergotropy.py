"""Ergotropy: maximum work extractable by pseudo-unitary operations.

The work is the energy of the state minus the energy of its passive state
(populations rearranged so the larger one sits on the lower level). For a
two-level system this collapses to the closed form
|E| (1 - 2 rho^{11} - lambda_minus + lambda_plus).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import BrokenPhaseError, PTHamiltonian, PTParams
from .states import (
    CoefficientMatrix,
    GeneralizedDensityMatrix,
    generalized_expectation,
    lambda_closed_form,
    passive_state,
)
from .tolerances import ERGOTROPY_FLOOR, LAMBDA_ATOL


@dataclass(frozen=True)
class ErgotropyResult:
    work: float
    active_energy: float
    passive_energy: float

    def __post_init__(self):
        gap = self.work - (self.active_energy - self.passive_energy)
        if abs(gap) > 1e-12:
            raise ValueError(f"inconsistent ergotropy decomposition (gap {gap:.3e})")
        if self.work < ERGOTROPY_FLOOR:
            raise ValueError(f"negative ergotropy {self.work:.3e}")


def ergotropy_closed_form(coeffs: CoefficientMatrix, params: PTParams) -> float:
    """|E| (1 - 2 rho^{11} - lambda_minus + lambda_plus) in the unbroken phase."""
    r, s = params.r, params.s
    if abs(r) >= s:
        raise BrokenPhaseError(f"ergotropy undefined outside the unbroken phase (r={r}, s={s})")
    kappa = 1.0 / (2.0 * (r * r + s * s))
    energy_abs = np.sqrt(kappa * (s * s - r * r))
    lam_plus, lam_minus = lambda_closed_form(coeffs)
    return float(energy_abs * (1.0 - 2.0 * coeffs.c11.real - lam_minus + lam_plus))


def ergotropy_numeric(g: GeneralizedDensityMatrix, h: PTHamiltonian) -> ErgotropyResult:
    """Work from the explicitly constructed passive state.

    Both energies are traces against the Hamiltonian; the result is
    cross-checked against the closed form, which must agree because the
    coefficient matrix is Hermitian by construction.
    """
    active = generalized_expectation(h.matrix, g)
    if abs(active.imag) > 1e-9:
        raise ValueError(f"non-real state energy (imaginary part {active.imag:.3e})")
    passive = generalized_expectation(h.matrix, passive_state(g))
    if abs(passive.imag) > 1e-9:
        raise ValueError(f"non-real passive energy (imaginary part {passive.imag:.3e})")
    work = active.real - passive.real
    closed = ergotropy_closed_form(g.coeffs, h.params)
    if abs(work - closed) > LAMBDA_ATOL:
        raise RuntimeError(
            f"numeric ergotropy {work} disagrees with closed form {closed}"
        )
    return ErgotropyResult(
        work=work, active_energy=active.real, passive_energy=passive.real
    )
