"""The two-level PT-symmetric Hamiltonian and its Hermitian basis.

The model is the non-Hermitian matrix [[i r, s], [s, -i r]], rescaled by
1/sqrt(d) with d = 2(r^2 + s^2) so that {H, H^dag} = I. The Hermitian
operator F = H^dag H then supplies an orthonormal basis on which H and
H^dag act as ladder operators, and from that basis the biorthonormal
energy eigenvectors, their duals and the positive-definite metric eta are
assembled in closed form. |r| < s is the unbroken phase with real spectrum;
|r| = s is the exceptional boundary where the eigenvectors coalesce.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tolerances import EXCEPTIONAL_RTOL
from .linalg import as_matrix

# Conventions for the azimuthal phase of the second basis vector. Both give
# identical energy eigenvectors; they differ only in the bookkeeping of the
# basis and of the ladder phases.
PHI_PI = "pi"
PHI_ZERO = "zero"

# Parameter-regime labels.
REGIME_NORMAL = "normal"
REGIME_GENERIC_UNBROKEN = "generic_unbroken"
REGIME_EXCEPTIONAL = "exceptional"
REGIME_BROKEN = "broken"


class BrokenPhaseError(ValueError):
    """Parameters outside the unbroken phase (|r| >= s): real spectrum lost."""


@dataclass(frozen=True)
class PTParams:
    """Raw model parameters: gain/loss strength r, coupling s, phase psi.

    Only psi = pi/2 admits the anticommutator normalization; that constraint
    is enforced when a Hamiltonian is built, not here, so that broken-phase
    parameter points can still be classified.
    """

    r: float
    s: float
    psi: float = math.pi / 2

    def __post_init__(self):
        if not (math.isfinite(self.r) and math.isfinite(self.s) and math.isfinite(self.psi)):
            raise ValueError("parameters must be finite")
        if self.s <= 0:
            raise ValueError(f"s must be positive, got {self.s}")


def classify_point(params: PTParams) -> str:
    """Label the parameter regime: normal, generic unbroken, exceptional, broken."""
    r, s = abs(params.r), params.s
    if abs(s - r) < EXCEPTIONAL_RTOL * s:
        return REGIME_EXCEPTIONAL
    if r > s:
        return REGIME_BROKEN
    if params.r == 0.0:
        return REGIME_NORMAL
    return REGIME_GENERIC_UNBROKEN


@dataclass(frozen=True)
class PTHamiltonian:
    """Rescaled Hamiltonian with its anticommutator scale d and kappa = 1/d."""

    params: PTParams
    d: float
    kappa: float
    matrix: np.ndarray


def build_pt_hamiltonian(params: PTParams) -> PTHamiltonian:
    """Build the rescaled Hamiltonian; requires psi = pi/2 and |r| < s."""
    if abs(params.psi - math.pi / 2) > 1e-12:
        raise ValueError(
            "outside anticommutator class: {H, H^dag} is proportional to the "
            f"identity only for psi = pi/2, got psi = {params.psi}"
        )
    regime = classify_point(params)
    if regime in (REGIME_EXCEPTIONAL, REGIME_BROKEN):
        raise BrokenPhaseError(
            f"broken PT phase or exceptional point: need |r| < s, got r={params.r}, s={params.s}"
        )
    r, s = params.r, params.s
    d = 2.0 * (r * r + s * s)
    matrix = np.array([[1j * r, s], [s, -1j * r]], dtype=complex) / math.sqrt(d)
    return PTHamiltonian(params=params, d=d, kappa=1.0 / d, matrix=matrix)


@dataclass(frozen=True)
class FBasis:
    """Orthonormal eigenvectors of F = H^dag H with eigenvalues f and 1 - f."""

    f: float
    ket_f: np.ndarray
    ket_1mf: np.ndarray
    phi: float


def f_basis(h: PTHamiltonian, phi_convention: str = PHI_PI) -> FBasis:
    """Eigenbasis of F = H^dag H; f = kappa (s + r)^2."""
    r, s = h.params.r, h.params.s
    f = h.kappa * (s + r) ** 2
    ket_f = np.array([-1j, 1], dtype=complex) / math.sqrt(2)
    if phi_convention == PHI_PI:
        ket_1mf = np.array([-1, 1j], dtype=complex) / math.sqrt(2)
        phi = math.pi
    elif phi_convention == PHI_ZERO:
        ket_1mf = np.array([1, -1j], dtype=complex) / math.sqrt(2)
        phi = 0.0
    else:
        raise ValueError(f"unknown phi convention {phi_convention!r}")
    return FBasis(f=f, ket_f=ket_f, ket_1mf=ket_1mf, phi=phi)


def verify_ladder(h: PTHamiltonian, basis: FBasis) -> tuple[float, float, float, float]:
    """Residual norms of the four ladder actions of H and H^dag on the basis.

    H maps |f> to e^{i phi} sqrt(f) |1-f> and |1-f> to e^{-i phi}
    sqrt(1-f) |f>; H^dag swaps the sqrt factors. All four residuals vanish
    for a valid Hamiltonian/basis pair.
    """
    hm = h.matrix
    hd = hm.conj().T
    f = basis.f
    up = np.exp(1j * basis.phi)
    dn = np.exp(-1j * basis.phi)
    res = (
        np.linalg.norm(hm @ basis.ket_f - up * math.sqrt(f) * basis.ket_1mf),
        np.linalg.norm(hm @ basis.ket_1mf - dn * math.sqrt(1 - f) * basis.ket_f),
        np.linalg.norm(hd @ basis.ket_f - up * math.sqrt(1 - f) * basis.ket_1mf),
        np.linalg.norm(hd @ basis.ket_1mf - dn * math.sqrt(f) * basis.ket_f),
    )
    return tuple(float(x) for x in res)


@dataclass(frozen=True)
class EnergyEigensystem:
    """Biorthonormal eigensystem of the Hamiltonian and its metric.

    ket_Eplus/ket_Eminus are the right eigenvectors with energies +|E| and
    -|E|; dual_Eplus/dual_Eminus are the left (dual) eigenvectors, normalized
    so that <dual_i | ket_j> = delta_ij. eta = sum_n |dual_n><dual_n| is the
    Hermitian positive-definite metric mapping kets to their duals.
    """

    params: PTParams
    energy_abs: float
    a_mag: float
    phi: float
    ket_Eplus: np.ndarray
    ket_Eminus: np.ndarray
    dual_Eplus: np.ndarray
    dual_Eminus: np.ndarray
    eta: np.ndarray

    def basis_right(self) -> np.ndarray:
        """Right eigenvectors as columns, ground state first."""
        return np.column_stack([self.ket_Eminus, self.ket_Eplus])

    def basis_dual(self) -> np.ndarray:
        """Dual eigenvectors as columns, ground state first."""
        return np.column_stack([self.dual_Eminus, self.dual_Eplus])


def energy_eigensystem(h: PTHamiltonian, phi_convention: str = PHI_PI) -> EnergyEigensystem:
    """Assemble energies, eigenvectors, duals and the metric in closed form.

    |E| = sqrt(kappa (s^2 - r^2)) and the relative weight of the two basis
    vectors inside each eigenvector is |a| = sqrt((s + r)/(s - r)), which
    diverges (or vanishes) at the exceptional boundary.
    """
    r, s = h.params.r, h.params.s
    if abs(s - abs(r)) < EXCEPTIONAL_RTOL * s or abs(r) > s:
        raise BrokenPhaseError(
            "exceptional point: biorthonormality violated because the relative "
            f"coefficient |a| degenerates for r={r}, s={s}"
        )
    basis = f_basis(h, phi_convention)
    a_mag = math.sqrt((s + r) / (s - r))
    energy_abs = math.sqrt(h.kappa * (s * s - r * r))
    # both admissible conventions carry an exactly real phase e^{+-i phi}
    up = dn = -1.0 + 0.0j if basis.phi == math.pi else 1.0 + 0.0j
    sq2 = math.sqrt(2)
    ket_plus = (basis.ket_f + a_mag * up * basis.ket_1mf) / sq2
    ket_minus = (basis.ket_f - a_mag * dn * basis.ket_1mf) / sq2
    dual_plus = (basis.ket_f + up / a_mag * basis.ket_1mf) / sq2
    dual_minus = (basis.ket_f - dn / a_mag * basis.ket_1mf) / sq2
    eta = np.outer(dual_plus, dual_plus.conj()) + np.outer(dual_minus, dual_minus.conj())
    return EnergyEigensystem(
        params=h.params,
        energy_abs=energy_abs,
        a_mag=a_mag,
        phi=basis.phi,
        ket_Eplus=ket_plus,
        ket_Eminus=ket_minus,
        dual_Eplus=dual_plus,
        dual_Eminus=dual_minus,
        eta=as_matrix(eta),
    )
