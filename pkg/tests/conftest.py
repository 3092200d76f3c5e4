"""Shared helpers: random state generators and independent oracle paths.

The oracles here deliberately avoid the library's code paths: the matrix
exponential is a truncated Taylor series, partial traces are explicit index
sums, and the Hermitian-limit trajectory is a plain Jaynes-Cummings
simulation built from numpy.linalg.eigh with ordinary adjoints.
"""

from __future__ import annotations

import numpy as np

from ptthermo import CoefficientMatrix


def random_coefficients(rng: np.random.Generator) -> CoefficientMatrix:
    """Random Hermitian, trace-one, positive coefficient matrix."""
    p = rng.uniform(0.0, 1.0)
    magnitude = np.sqrt(p * (1 - p)) * rng.uniform(0.0, 1.0)
    off = magnitude * np.exp(2j * np.pi * rng.uniform())
    return CoefficientMatrix(p, off, np.conj(off), 1 - p)


def random_complex_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def random_density_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random full-rank density matrix (Hermitian, positive, trace one)."""
    a = random_complex_matrix(rng, n)
    rho = a @ a.conj().T + 1e-3 * np.eye(n)
    return rho / np.trace(rho).real


def taylor_matrix_exp(a: np.ndarray, terms: int = 30) -> np.ndarray:
    """Truncated power series for exp(a); accurate for modest norms only."""
    result = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ a / k
        result = result + term
    return result


def partial_trace_bath_loop(m: np.ndarray, dim_sys: int, dim_bath: int) -> np.ndarray:
    """Index-sum partial trace over the right factor."""
    out = np.zeros((dim_sys, dim_sys), dtype=complex)
    for i in range(dim_sys):
        for j in range(dim_sys):
            for k in range(dim_bath):
                out[i, j] += m[i * dim_bath + k, j * dim_bath + k]
    return out


def jc_reference_trajectory(
    s: float,
    g: float,
    omega_c: float,
    dim: int,
    temperature: float,
    rho_sys0: np.ndarray,
    times,
) -> np.ndarray:
    """Plain Hermitian Jaynes-Cummings evolution of the r = 0 configuration.

    Uses eigh throughout and the ordinary adjoint U^dag; returns the reduced
    system state at each time.
    """
    h_sys = np.array([[0.0, s], [s, 0.0]]) / np.sqrt(2.0 * s * s)
    _, vecs = np.linalg.eigh(h_sys)
    minus, plus = vecs[:, 0], vecs[:, 1]
    raise_op = np.outer(plus, minus.conj())
    lower_op = raise_op.conj().T
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    h_bath = omega_c * np.diag(np.arange(dim))
    h_total = (
        np.kron(h_sys, np.eye(dim))
        + np.kron(np.eye(2), h_bath)
        + g * (np.kron(raise_op, a) + np.kron(lower_op, a.conj().T))
    )
    if temperature == 0:
        p = np.zeros(dim)
        p[0] = 1.0
    else:
        p = np.exp(-omega_c * np.arange(dim) / temperature)
        p /= p.sum()
    rho0 = np.kron(np.asarray(rho_sys0, dtype=complex), np.diag(p))
    w, v = np.linalg.eigh(h_total)
    out = np.empty((len(times), 2, 2), dtype=complex)
    for k, t in enumerate(times):
        u = (v * np.exp(-1j * w * t)) @ v.conj().T
        rho = u @ rho0 @ u.conj().T
        out[k] = partial_trace_bath_loop(rho, 2, dim)
    return out


def jc_eigh_projector(s: float, which: str) -> np.ndarray:
    """Energy projector of the Hermitian limit, built from eigh alone."""
    h_sys = np.array([[0.0, s], [s, 0.0]]) / np.sqrt(2.0 * s * s)
    _, vecs = np.linalg.eigh(h_sys)
    column = vecs[:, 1] if which == "excited" else vecs[:, 0]
    return np.outer(column, column.conj())
