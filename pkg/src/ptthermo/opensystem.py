"""Composite system-bath construction and pseudo-unitary evolution.

The two-level system couples to a truncated single-mode bosonic bath through
a rotating-wave (Jaynes-Cummings-like) interaction written with the
generalized ladder operators sigma_G^+- of the biorthonormal basis. The total
generator is pseudo-Hermitian with respect to eta (x) I, so the evolution
U(t) = exp(-i H_total t) with adjoint U''(t) = exp(+i H_total t) preserves
the generalized trace. Trajectories record the composite state and both its
reductions on a caller-supplied time grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import EnergyEigensystem, PTHamiltonian
from .linalg import (
    NearDefectiveError,
    as_matrix,
    eig_general,
    kron,
    matrix_exp,
    partial_trace_bath,
    partial_trace_system,
)
from .states import GeneralizedDensityMatrix
from .tolerances import BATH_TAIL_WARN, TRAJECTORY_TRACE_ATOL


@dataclass(frozen=True)
class BathSpec:
    """Single bosonic mode: frequency, Fock-space truncation, temperature.

    The thermal weight left above the truncation is computed on construction
    and a warning is emitted when it exceeds 1%; the truncated thermal state
    is renormalized regardless.
    """

    omega_c: float
    dim: int
    temperature: float
    tail_mass: float = field(init=False)

    def __post_init__(self):
        if self.omega_c <= 0 or not math.isfinite(self.omega_c):
            raise ValueError(f"bath frequency must be positive, got {self.omega_c}")
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"bath dimension must be an integer >= 2, got {self.dim}")
        if self.temperature < 0 or not math.isfinite(self.temperature):
            raise ValueError(f"temperature must be nonnegative, got {self.temperature}")
        if self.temperature == 0:
            tail = 0.0
        else:
            # geometric series: sum_{n>=dim} x^n / sum_{n>=0} x^n = x^dim
            tail = math.exp(-self.omega_c * self.dim / self.temperature)
        object.__setattr__(self, "tail_mass", tail)
        if tail > BATH_TAIL_WARN:
            warnings.warn(
                f"bath truncation leaves {tail:.3%} thermal weight above the "
                f"cutoff (dim={self.dim}); the truncated state is renormalized",
                stacklevel=3,
            )


def annihilation_op(dim: int) -> np.ndarray:
    """Truncated bosonic annihilation operator: a[n-1, n] = sqrt(n)."""
    if dim < 2:
        raise ValueError(f"need at least two Fock levels, got dim={dim}")
    return np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(complex)


def thermal_state(bath: BathSpec) -> np.ndarray:
    """Truncated, renormalized Gibbs state of the bath mode (diagonal)."""
    if bath.temperature == 0:
        p = np.zeros(bath.dim)
        p[0] = 1.0
    else:
        p = np.exp(-bath.omega_c * np.arange(bath.dim) / bath.temperature)
        p /= p.sum()
    return np.diag(p).astype(complex)


def sigma_g_ops(esys: EnergyEigensystem) -> tuple[np.ndarray, np.ndarray]:
    """Generalized raising/lowering operators |E+><dual-| and |E-><dual+|.

    They are pseudo-adjoints of each other: eta^-1 (sigma+)^dag eta = sigma-.
    """
    sigma_plus = np.outer(esys.ket_Eplus, esys.dual_Eminus.conj())
    sigma_minus = np.outer(esys.ket_Eminus, esys.dual_Eplus.conj())
    return sigma_plus, sigma_minus


@dataclass(frozen=True)
class CompositeSystem:
    """System (x) bath Hamiltonian pieces plus the lifted metric eta (x) I."""

    h_tilde: np.ndarray
    h_int: np.ndarray
    h_bath: np.ndarray
    sigma_plus_g: np.ndarray
    sigma_minus_g: np.ndarray
    eta_total: np.ndarray
    g: float
    dim_bath: int


def build_composite(
    h: PTHamiltonian, esys: EnergyEigensystem, bath: BathSpec, g: float
) -> CompositeSystem:
    """Assemble H (x) I + I (x) H_B + g (sigma+ (x) a + sigma- (x) a^dag)."""
    g = float(g)
    if not math.isfinite(g):
        raise ValueError("coupling constant must be a finite real number")
    a = annihilation_op(bath.dim)
    h_bath = bath.omega_c * (a.conj().T @ a)
    sigma_plus, sigma_minus = sigma_g_ops(esys)
    h_int = g * (kron(sigma_plus, a) + kron(sigma_minus, a.conj().T))
    h_tilde = kron(h.matrix, np.eye(bath.dim)) + kron(np.eye(2), h_bath) + h_int
    return CompositeSystem(
        h_tilde=as_matrix(h_tilde),
        h_int=h_int,
        h_bath=h_bath,
        sigma_plus_g=sigma_plus,
        sigma_minus_g=sigma_minus,
        eta_total=kron(esys.eta, np.eye(bath.dim)),
        g=g,
        dim_bath=bath.dim,
    )


@dataclass(frozen=True)
class Trajectory:
    """Composite and reduced states sampled on a time grid."""

    times: np.ndarray
    rho_gb: np.ndarray
    rho_g: np.ndarray
    rho_b: np.ndarray


def _propagator_pair(comp: CompositeSystem):
    """Return t -> (U(t), U''(t)); eigenbasis route with a dense-exp fallback."""
    try:
        dec = eig_general(comp.h_tilde)
        right = dec.right_vectors
        left_adj = dec.left_vectors.conj().T
        values = dec.values

        def pair(t: float):
            forward = (right * np.exp(-1j * values * t)) @ left_adj
            backward = (right * np.exp(1j * values * t)) @ left_adj
            return forward, backward

        return pair
    except NearDefectiveError:

        def pair(t: float):
            return matrix_exp(-1j * comp.h_tilde * t), matrix_exp(1j * comp.h_tilde * t)

        return pair


def evolve(
    comp: CompositeSystem,
    rho_g0: GeneralizedDensityMatrix,
    bath: BathSpec,
    times,
) -> Trajectory:
    """Propagate rho_G(0) (x) rho_B(0) and reduce at each requested time."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a nonempty 1-D sequence")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("times must be sorted and nonnegative")
    if bath.dim != comp.dim_bath:
        raise ValueError(
            f"bath dimension {bath.dim} does not match the composite ({comp.dim_bath})"
        )
    rho0 = kron(rho_g0.matrix, thermal_state(bath))
    pair = _propagator_pair(comp)
    n = len(times)
    dim = 2 * comp.dim_bath
    rho_gb = np.empty((n, dim, dim), dtype=complex)
    rho_g = np.empty((n, 2, 2), dtype=complex)
    rho_b = np.empty((n, comp.dim_bath, comp.dim_bath), dtype=complex)
    for k, t in enumerate(times):
        if t == 0.0:
            state = rho0
        else:
            forward, backward = pair(t)
            state = forward @ rho0 @ backward
        rho_gb[k] = state
        rho_g[k] = partial_trace_bath(state, 2, comp.dim_bath)
        rho_b[k] = partial_trace_system(state, 2, comp.dim_bath)
        for name, tr in (
            ("composite", np.trace(rho_gb[k])),
            ("system", np.trace(rho_g[k])),
            ("bath", np.trace(rho_b[k])),
        ):
            if abs(tr - 1.0) > TRAJECTORY_TRACE_ATOL:
                raise RuntimeError(
                    f"{name} trace drifted to {tr} at t={t} (evolution unreliable)"
                )
    return Trajectory(times=times, rho_gb=rho_gb, rho_g=rho_g, rho_b=rho_b)


def check_eta_unitarity(comp: CompositeSystem, t: float) -> float:
    """Frobenius residual of U''(t) U(t) = I, with both factors built densely."""
    forward = matrix_exp(-1j * comp.h_tilde * t)
    backward = matrix_exp(1j * comp.h_tilde * t)
    dim = comp.h_tilde.shape[0]
    return float(np.linalg.norm(backward @ forward - np.eye(dim)))
