"""Generalized density matrices on the biorthonormal basis.

A state is specified by a Hermitian, trace-one, positive coefficient matrix
rho^{ij} attached to the projectors |E_i><dual_j| (index 1 is the ground
level E-, index 2 the excited level E+). The resulting 2x2 matrix in the
computational basis is non-Hermitian in general but similar to a Hermitian
positive matrix, so its eigenvalues are real and coincide with those of the
coefficient matrix. Two independent constructions of the matrix (projector
sum and element-wise closed form) are evaluated and compared on every build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonian import EnergyEigensystem, PTParams
from .tolerances import (
    COEFF_IMAG_DRIFT,
    COEFF_POSITIVITY_ATOL,
    LAMBDA_ATOL,
    STATE_TRACE_ATOL,
    STATE_TWO_PATH_ATOL,
)

INITIAL_STATE_KINDS = ("ground", "excited", "intermediate")


class InvalidStateError(ValueError):
    """Coefficients or matrix do not describe a valid generalized state."""


@dataclass(frozen=True)
class CoefficientMatrix:
    """Projector coefficients rho^{ij}: Hermitian, unit trace, positive.

    Construction canonicalizes the input: imaginary drift below 1e-9 on the
    diagonal is discarded, c21 is replaced by conj(c12) after a consistency
    check, and c22 is pinned to 1 - c11.
    """

    c11: complex
    c12: complex
    c21: complex
    c22: complex

    def __post_init__(self):
        vals = [complex(self.c11), complex(self.c12), complex(self.c21), complex(self.c22)]
        if not all(math.isfinite(v.real) and math.isfinite(v.imag) for v in vals):
            raise InvalidStateError("coefficients must be finite")
        c11, c12, c21, c22 = vals
        if abs(c11.imag) > COEFF_IMAG_DRIFT or abs(c22.imag) > COEFF_IMAG_DRIFT:
            raise InvalidStateError(
                f"invalid state coefficients: diagonal imaginary part exceeds {COEFF_IMAG_DRIFT:g}"
            )
        p11, p22 = c11.real, c22.real
        if abs(p11 + p22 - 1.0) > 1e-12:
            raise InvalidStateError(f"invalid state coefficients: trace {p11 + p22} != 1")
        slack = 1e-10
        if p11 < -slack or p11 > 1 + slack or p22 < -slack or p22 > 1 + slack:
            raise InvalidStateError(
                f"invalid state coefficients: populations ({p11}, {p22}) outside [0, 1]"
            )
        p11 = min(max(p11, 0.0), 1.0)
        if abs(c21 - c12.conjugate()) > COEFF_IMAG_DRIFT:
            raise InvalidStateError("invalid state coefficients: c21 != conj(c12)")
        off = 0.5 * (c12 + c21.conjugate())
        if p11 * (1 - p11) - abs(off) ** 2 < -COEFF_POSITIVITY_ATOL:
            raise InvalidStateError(
                f"invalid state coefficients: negative determinant {p11 * (1 - p11) - abs(off) ** 2:.3e}"
            )
        object.__setattr__(self, "c11", complex(p11))
        object.__setattr__(self, "c22", complex(1.0 - p11))
        object.__setattr__(self, "c12", off)
        object.__setattr__(self, "c21", off.conjugate())

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.c11, self.c12], [self.c21, self.c22]], dtype=complex)

    @classmethod
    def from_matrix(cls, m) -> "CoefficientMatrix":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidStateError(f"coefficient matrix must be 2x2, got {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])


@dataclass(frozen=True)
class GeneralizedDensityMatrix:
    """A state: its 2x2 matrix, its coefficients and the eigensystem it lives in."""

    matrix: np.ndarray
    coeffs: CoefficientMatrix
    esys: EnergyEigensystem


def rho_g_closed_form(coeffs: CoefficientMatrix, params: PTParams) -> np.ndarray:
    """Element-wise state matrix, written directly in r, s and the coefficients.

    With p = (sqrt(s+r) + i sqrt(s-r))^2 and q = conj(p), each entry is a
    fixed linear combination of the four coefficients divided by
    4 sqrt(s^2 - r^2). This is algebraically identical to the projector sum
    and serves as its independent cross-check.
    """
    r, s = params.r, params.s
    c11, c12, c21, c22 = coeffs.c11, coeffs.c12, coeffs.c21, coeffs.c22
    p = (math.sqrt(s + r) + 1j * math.sqrt(s - r)) ** 2
    q = (math.sqrt(s + r) - 1j * math.sqrt(s - r)) ** 2
    n = 4.0 * math.sqrt(s * s - r * r)
    m11 = (-1j * p * c11 - 2j * s * c12 + 2j * s * c21 + 1j * q * c22) / n
    m12 = (-2 * s * c11 - p * c12 + q * c21 + 2 * s * c22) / n
    m21 = (-2 * s * c11 - q * c12 + p * c21 + 2 * s * c22) / n
    m22 = (1j * q * c11 + 2j * s * c12 - 2j * s * c21 - 1j * p * c22) / n
    return np.array([[m11, m12], [m21, m22]], dtype=complex)


def build_rho_g(coeffs: CoefficientMatrix, esys: EnergyEigensystem) -> GeneralizedDensityMatrix:
    """Assemble the state from its coefficients, cross-checking both routes."""
    right = esys.basis_right()
    dual = esys.basis_dual()
    matrix = right @ coeffs.matrix @ dual.conj().T
    closed = rho_g_closed_form(coeffs, esys.params)
    mismatch = float(np.max(np.abs(matrix - closed)))
    if mismatch > STATE_TWO_PATH_ATOL:
        raise RuntimeError(
            f"projector-sum and element-wise state constructions disagree by {mismatch:.3e}"
        )
    trace_err = abs(np.trace(matrix) - 1.0)
    if trace_err > STATE_TRACE_ATOL:
        raise InvalidStateError(f"state trace deviates from one by {trace_err:.3e}")
    return GeneralizedDensityMatrix(matrix=matrix, coeffs=coeffs, esys=esys)


def coefficients_from_matrix(esys: EnergyEigensystem, m) -> CoefficientMatrix:
    """Project a state matrix back onto the biorthonormal projectors.

    The coefficient c_ij is <dual_i| m |ket_j>; for any matrix similar to a
    Hermitian state this reproduces a Hermitian coefficient matrix up to
    numerical drift, which construction validates and discards.
    """
    m = np.asarray(m, dtype=complex)
    c = esys.basis_dual().conj().T @ m @ esys.basis_right()
    return CoefficientMatrix.from_matrix(c)


def lambda_closed_form(coeffs: CoefficientMatrix) -> tuple[float, float]:
    """Closed-form state eigenvalues 1/2 +- sqrt(1 - 4 det(coeffs)) / 2.

    The state matrix is similar to the coefficient matrix, so both share
    eigenvalues; Hermiticity and positivity of the coefficients make them
    real and in [0, 1].
    """
    det = (coeffs.c11 * coeffs.c22 - coeffs.c12 * coeffs.c21).real
    radicand = max(1.0 - 4.0 * det, 0.0)
    root = 0.5 * math.sqrt(radicand)
    return 0.5 + root, 0.5 - root


def lambda_eigenvalues(g: GeneralizedDensityMatrix) -> tuple[float, float]:
    """State eigenvalues (lambda_plus >= lambda_minus), cross-checked numerically."""
    lam_plus, lam_minus = lambda_closed_form(g.coeffs)
    numeric = np.linalg.eigvals(g.matrix)
    if np.max(np.abs(numeric.imag)) > 1e-9:
        raise InvalidStateError(
            f"invalid generalized state: complex eigenvalue {numeric[np.argmax(np.abs(numeric.imag))]}"
        )
    hi, lo = np.sort(numeric.real)[::-1][:2]
    if abs(hi - lam_plus) > LAMBDA_ATOL or abs(lo - lam_minus) > LAMBDA_ATOL:
        raise RuntimeError(
            f"closed-form eigenvalues ({lam_plus}, {lam_minus}) disagree with "
            f"numerical ones ({hi}, {lo})"
        )
    return lam_plus, lam_minus


def passive_state(g: GeneralizedDensityMatrix) -> GeneralizedDensityMatrix:
    """Energy-ordered rearrangement: larger population on the lower level."""
    lam_plus, lam_minus = lambda_eigenvalues(g)
    coeffs = CoefficientMatrix(lam_plus, 0.0, 0.0, lam_minus)
    return build_rho_g(coeffs, g.esys)


def generalized_expectation(obs, g: GeneralizedDensityMatrix) -> complex:
    """Tr(obs . rho) for a 2x2 observable against the state matrix."""
    obs = np.asarray(obs, dtype=complex)
    if obs.shape != (2, 2):
        raise ValueError(f"observable must be 2x2, got {obs.shape}")
    return complex(np.trace(obs @ g.matrix))


def initial_state(kind: str, esys: EnergyEigensystem) -> GeneralizedDensityMatrix:
    """One of the three canonical initial states: ground, excited, intermediate.

    The intermediate state is the pure superposition sqrt(3)/2 |E-> + 1/2 |E+>,
    whose coefficient matrix is [[3/4, sqrt(3)/4], [sqrt(3)/4, 1/4]].
    """
    if kind == "ground":
        coeffs = CoefficientMatrix(1.0, 0.0, 0.0, 0.0)
    elif kind == "excited":
        coeffs = CoefficientMatrix(0.0, 0.0, 0.0, 1.0)
    elif kind == "intermediate":
        cross = math.sqrt(3) / 4
        coeffs = CoefficientMatrix(0.75, cross, cross, 0.25)
    else:
        raise ValueError(f"unknown initial state {kind!r}; expected one of {INITIAL_STATE_KINDS}")
    return build_rho_g(coeffs, esys)
