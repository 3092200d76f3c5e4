"""Thermodynamic bookkeeping along a trajectory.

Internal energy, work and bath heat follow the open-system convention
dU = dW - dQ_B, with dQ_B positive when the bath gains energy; the residual
dU - dW + dQ_B is reported rather than silently zeroed. Entropic quantities
of the non-Hermitian states are evaluated after a similarity rotation by the
positive square root of the relevant metric, which makes every spectral
function well defined on a Hermitian matrix with the same spectrum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .ergotropy import ergotropy_numeric
from .hamiltonian import (
    EnergyEigensystem,
    PTHamiltonian,
    build_pt_hamiltonian,
    energy_eigensystem,
)
from .linalg import kron, psd_inv_sqrt, psd_sqrt
from .opensystem import BathSpec, CompositeSystem, Trajectory, annihilation_op, build_composite, evolve
from .states import coefficients_from_matrix, initial_state, lambda_eigenvalues, build_rho_g
from .tolerances import STATE_EIG_CLIP

# Weight of a state on the numerical null space of the reference, beyond
# which the relative entropy is reported as infinite.
SUPPORT_ATOL = 1e-8


@dataclass(frozen=True)
class ThermoRecord:
    """Per-time-step thermodynamic quantities."""

    t: float
    dU: float
    dW: float
    dQ_B: float
    first_law_residual: float
    sigma: float
    s_vn: float
    ergotropy: float
    lambda_plus: float
    lambda_minus: float


def _real_trace(op: np.ndarray, m: np.ndarray, what: str) -> float:
    value = complex(np.trace(op @ m))
    if abs(value.imag) > 1e-8:
        raise ValueError(f"non-physical {what}: imaginary part {value.imag:.3e}")
    return value.real


def internal_energy_change(h: PTHamiltonian, traj: Trajectory, k: int) -> float:
    """Tr[H (rho_G(t_k) - rho_G(0))]."""
    return _real_trace(h.matrix, traj.rho_g[k] - traj.rho_g[0], "energy")


def work_done(comp: CompositeSystem, traj: Trajectory, k: int) -> float:
    """Tr[H_int (rho_GB(0) - rho_GB(t_k))]."""
    return _real_trace(comp.h_int, traj.rho_gb[0] - traj.rho_gb[k], "work")


def heat_exchanged(bath: BathSpec, traj: Trajectory, k: int) -> float:
    """Tr[H_B (rho_B(t_k) - rho_B(0))]; positive when the bath gains energy."""
    a = annihilation_op(bath.dim)
    h_bath = bath.omega_c * (a.conj().T @ a)
    return _real_trace(h_bath, traj.rho_b[k] - traj.rho_b[0], "heat")


def _rotate_to_hermitian(rho: np.ndarray, eta_frame) -> np.ndarray:
    """Similarity-rotate by eta^(1/2) and return the Hermitian part."""
    rho = np.asarray(rho, dtype=complex)
    if eta_frame is not None:
        half = psd_sqrt(eta_frame)
        inv_half = psd_inv_sqrt(eta_frame)
        rho = half @ rho @ inv_half
    return 0.5 * (rho + rho.conj().T)


def von_neumann_entropy(rho, eta_frame=None, clip: float = STATE_EIG_CLIP) -> float:
    """-Tr(rho log rho), evaluated in the metric-rotated Hermitian frame.

    Eigenvalues at or below ``clip`` contribute zero (the x log x -> 0 limit).
    """
    w = np.linalg.eigvalsh(_rotate_to_hermitian(rho, eta_frame))
    if w.min() < -1e-8:
        raise ValueError(f"invalid state: negative eigenvalue {w.min():.3e}")
    w = w[w > clip]
    return float(-(w * np.log(w)).sum())


def relative_entropy(rho, sigma, frame=None, clip: float = STATE_EIG_CLIP) -> float:
    """Tr(rho log rho - rho log sigma) in a common metric-rotated frame.

    Returns ``inf`` when rho has more than SUPPORT_ATOL weight where sigma is
    numerically rank-deficient, since the divergence is then genuine rather
    than round-off.
    """
    rho_h = _rotate_to_hermitian(rho, frame)
    sigma_h = _rotate_to_hermitian(sigma, frame)
    w_r, v_r = np.linalg.eigh(rho_h)
    w_s, v_s = np.linalg.eigh(sigma_h)
    if w_r.min() < -1e-8 or w_s.min() < -1e-8:
        raise ValueError("invalid state: negative eigenvalue in relative entropy")
    null = v_s[:, w_s <= clip]
    if null.shape[1]:
        weight = float(np.real(np.trace(null.conj().T @ rho_h @ null)))
        if weight > SUPPORT_ATOL:
            warnings.warn(
                f"relative entropy diverges: the state carries weight {weight:.3e} "
                "outside the support of the reference",
                stacklevel=2,
            )
            return math.inf
    log_r = (v_r * np.log(np.maximum(w_r, clip))) @ v_r.conj().T
    log_s = (v_s * np.log(np.maximum(w_s, clip))) @ v_s.conj().T
    return float(np.real(np.trace(rho_h @ (log_r - log_s))))


def entropy_production(comp: CompositeSystem, traj: Trajectory, k: int) -> float:
    """Relative entropy of rho_GB(t_k) against rho_G(t_k) (x) rho_B(0)."""
    reference = kron(traj.rho_g[k], traj.rho_b[0])
    return relative_entropy(traj.rho_gb[k], reference, frame=comp.eta_total)


def thermo_records(
    h: PTHamiltonian,
    esys: EnergyEigensystem,
    comp: CompositeSystem,
    bath: BathSpec,
    traj: Trajectory,
) -> list[ThermoRecord]:
    """Evaluate every thermodynamic quantity at every trajectory point."""
    a = annihilation_op(bath.dim)
    h_bath = bath.omega_c * (a.conj().T @ a)
    records = []
    for k, t in enumerate(traj.times):
        dU = _real_trace(h.matrix, traj.rho_g[k] - traj.rho_g[0], "energy")
        dW = _real_trace(comp.h_int, traj.rho_gb[0] - traj.rho_gb[k], "work")
        dQ = _real_trace(h_bath, traj.rho_b[k] - traj.rho_b[0], "heat")
        sigma = entropy_production(comp, traj, k)
        s_vn = von_neumann_entropy(traj.rho_g[k], eta_frame=esys.eta)
        state = build_rho_g(coefficients_from_matrix(esys, traj.rho_g[k]), esys)
        lam_plus, lam_minus = lambda_eigenvalues(state)
        work = ergotropy_numeric(state, h).work
        records.append(
            ThermoRecord(
                t=float(t),
                dU=dU,
                dW=dW,
                dQ_B=dQ,
                first_law_residual=dU - dW + dQ,
                sigma=sigma,
                s_vn=s_vn,
                ergotropy=work,
                lambda_plus=lam_plus,
                lambda_minus=lam_minus,
            )
        )
    return records


def third_law_scan(
    params,
    initial_kind: str,
    coupling: float,
    omega_c: float,
    dim_bath: int,
    temperatures,
    times,
) -> list[tuple[float, float]]:
    """Maximum system entropy over the time grid, for each bath temperature.

    Temperatures must be positive and strictly descending; for weak coupling
    the reported maxima decrease toward zero with the temperature.
    """
    temperatures = [float(T) for T in temperatures]
    if not temperatures:
        raise ValueError("temperature list must not be empty")
    if any(T <= 0 for T in temperatures):
        raise ValueError("temperatures must be positive")
    if any(b >= a for a, b in zip(temperatures, temperatures[1:])):
        raise ValueError("temperatures must be strictly descending")
    h = build_pt_hamiltonian(params)
    esys = energy_eigensystem(h)
    rho0 = initial_state(initial_kind, esys)
    results = []
    for temperature in temperatures:
        bath = BathSpec(omega_c=omega_c, dim=dim_bath, temperature=temperature)
        comp = build_composite(h, esys, bath, coupling)
        traj = evolve(comp, rho0, bath, times)
        s_max = max(
            von_neumann_entropy(traj.rho_g[k], eta_frame=esys.eta)
            for k in range(len(traj.times))
        )
        results.append((temperature, s_max))
    return results
