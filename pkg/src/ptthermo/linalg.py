"""Dense complex matrix kernels.

Everything here is a pure function over numpy arrays: Kronecker products,
partial traces, the matrix exponential, eigendecomposition of general
(non-normal) matrices with left/right eigenvector pairs, and the matrix
logarithm of (similarity-)positive matrices. Inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .tolerances import EIG_CONDITION_LIMIT, HERMITICITY_ATOL, STATE_EIG_CLIP


class NearDefectiveError(ValueError):
    """Eigenbasis too ill-conditioned to trust (physically: near an exceptional point)."""


def as_matrix(entries) -> np.ndarray:
    """Validate and return a 2-D complex array with finite entries."""
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def _require_square(m: np.ndarray) -> np.ndarray:
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(m: np.ndarray, atol: float = HERMITICITY_ATOL) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T)) <= atol)


def kron(a, b) -> np.ndarray:
    """Kronecker product; the first factor carries the slow (left) index."""
    return np.kron(as_matrix(a), as_matrix(b))


def _split_composite(m, dim_sys: int, dim_bath: int) -> np.ndarray:
    m = as_matrix(m)
    n = dim_sys * dim_bath
    if dim_sys < 1 or dim_bath < 1:
        raise ValueError("subsystem dimensions must be positive")
    if m.shape != (n, n):
        raise ValueError(
            f"malformed composite: expected shape ({n}, {n}) for "
            f"dim_sys={dim_sys}, dim_bath={dim_bath}, got {m.shape}"
        )
    return m.reshape(dim_sys, dim_bath, dim_sys, dim_bath)


def partial_trace_bath(m, dim_sys: int, dim_bath: int) -> np.ndarray:
    """Trace out the right (bath) factor of a system (x) bath matrix."""
    return np.einsum("ikjk->ij", _split_composite(m, dim_sys, dim_bath))


def partial_trace_system(m, dim_sys: int, dim_bath: int) -> np.ndarray:
    """Trace out the left (system) factor of a system (x) bath matrix."""
    return np.einsum("ikil->kl", _split_composite(m, dim_sys, dim_bath))


def matrix_exp(a) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring (safe for non-normal input)."""
    a = _require_square(as_matrix(a))
    if not a.any():
        return np.eye(a.shape[0], dtype=complex)
    return scipy.linalg.expm(a)


@dataclass(frozen=True)
class EigDecomposition:
    """Eigendecomposition with biorthogonally normalized left/right vectors.

    Columns of ``right_vectors`` are right eigenvectors, columns of
    ``left_vectors`` are left eigenvectors, and left^dag . right = I holds by
    construction (the left set is the inverse-adjoint of the right set).
    """

    values: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    condition_estimate: float


def eig_general(a) -> EigDecomposition:
    """Diagonalize a general square matrix, rejecting near-defective input."""
    a = _require_square(as_matrix(a))
    try:
        values, right = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:
        raise NearDefectiveError(f"eigendecomposition failed to converge: {exc}") from exc
    cond = float(np.linalg.cond(right))
    if not np.isfinite(cond) or cond > EIG_CONDITION_LIMIT:
        raise NearDefectiveError(
            f"near-defective matrix: eigenbasis condition estimate {cond:.3e} "
            f"exceeds {EIG_CONDITION_LIMIT:.0e}"
        )
    left = np.linalg.inv(right).conj().T
    return EigDecomposition(
        values=values, right_vectors=right, left_vectors=left, condition_estimate=cond
    )


def matrix_log_psd(a, clip: float = STATE_EIG_CLIP) -> np.ndarray:
    """Logarithm of a matrix with a real spectrum in [-clip, 1 + clip].

    Eigenvalues below ``clip`` are floored at ``clip`` before the log, so the
    result is finite for rank-deficient states. Hermitian input takes the
    stable eigh path; otherwise a general eigendecomposition is used.
    """
    a = _require_square(as_matrix(a))
    if is_hermitian(a):
        w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
        if w.min() < -clip:
            raise ValueError(f"not positive semidefinite: min eigenvalue {w.min():.3e}")
        return (v * np.log(np.maximum(w, clip))) @ v.conj().T
    dec = eig_general(a)
    if np.max(np.abs(dec.values.imag)) > 1e-9:
        raise ValueError(
            "not a valid state: complex eigenvalue with imaginary part "
            f"{np.max(np.abs(dec.values.imag)):.3e}"
        )
    w = dec.values.real
    if w.min() < -clip:
        raise ValueError(f"not positive semidefinite: min eigenvalue {w.min():.3e}")
    log_w = np.log(np.maximum(w, clip))
    return (dec.right_vectors * log_w) @ dec.left_vectors.conj().T


def psd_sqrt(a) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix."""
    a = _require_square(as_matrix(a))
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    if w.min() < -HERMITICITY_ATOL:
        raise ValueError(f"not positive semidefinite: min eigenvalue {w.min():.3e}")
    return (v * np.sqrt(np.maximum(w, 0.0))) @ v.conj().T


def psd_inv_sqrt(a) -> np.ndarray:
    """Inverse principal square root of a Hermitian positive definite matrix."""
    a = _require_square(as_matrix(a))
    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    if w.min() <= 0.0:
        raise ValueError(f"not positive definite: min eigenvalue {w.min():.3e}")
    return (v / np.sqrt(w)) @ v.conj().T
