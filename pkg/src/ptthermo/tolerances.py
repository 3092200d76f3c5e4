"""Numerical tolerance constants, kept in one place.

These are the single source of truth: the library's validation guards, the
test suite and the run manifests all read the same constants. Values assume
double precision and dense matrices of dimension <= ~30.
"""

# Relative Frobenius tolerance for eigendecomposition reconstruction.
RECONSTRUCTION_RTOL = 1e-10

# Absolute entrywise tolerance for Hermiticity / anticommutator checks.
HERMITICITY_ATOL = 1e-12

# Biorthonormality and pseudo-Hermiticity of the energy eigensystem.
BIORTHONORMALITY_ATOL = 1e-10

# Ladder-action residuals of H and H^dag on the Hermitian basis.
LADDER_ATOL = 1e-12

# Agreement of the two closed-form energy expressions.
ENERGY_CONSISTENCY_ATOL = 1e-12

# Agreement of the projector-sum and element-wise state constructions.
STATE_TWO_PATH_ATOL = 1e-12

# Closed-form state eigenvalues vs. numerically computed ones.
LAMBDA_ATOL = 1e-10

# Trace of a system state / of trajectory states.
STATE_TRACE_ATOL = 1e-10
TRAJECTORY_TRACE_ATOL = 1e-9

# Imaginary drift discarded silently when extracting state coefficients.
COEFF_IMAG_DRIFT = 1e-9

# Positivity slack for coefficient matrices.
COEFF_POSITIVITY_ATOL = 1e-12

# Energy-balance residual |dU - dW + dQ_B| along a trajectory.
FIRST_LAW_ATOL = 1e-8

# Smallest admissible entropy production / ergotropy (round-off slack).
SIGMA_FLOOR = -1e-10
ERGOTROPY_FLOOR = -1e-10

# Frobenius residual of the pseudo-unitarity contract U''(t) U(t) = I.
ETA_UNITARITY_ATOL = 1e-8

# Eigenbasis condition number beyond which a matrix counts as near-defective.
EIG_CONDITION_LIMIT = 1e8

# Floor applied to state eigenvalues before taking logarithms.
STATE_EIG_CLIP = 1e-14

# |s - |r|| below this (relative to s) is treated as the exceptional boundary.
EXCEPTIONAL_RTOL = 1e-12

# Bath thermal weight above the Fock cutoff that triggers a truncation warning.
BATH_TAIL_WARN = 0.01

# Low-temperature entropy bound used by the third-law verdict.
THIRD_LAW_ENTROPY_BOUND = 0.05
