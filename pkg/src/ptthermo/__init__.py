"""Quantum thermodynamics of a PT-symmetric two-level system.

The package builds the anticommutator-normalized non-Hermitian Hamiltonian
and its biorthonormal eigensystem, evolves the system coupled to a truncated
single-mode thermal bath under pseudo-unitary dynamics, and evaluates
ergotropy together with the first, second and third laws of thermodynamics.
"""

__version__ = "0.1.0"

from .linalg import (
    EigDecomposition,
    NearDefectiveError,
    eig_general,
    kron,
    matrix_exp,
    matrix_log_psd,
    partial_trace_bath,
    partial_trace_system,
)
from .hamiltonian import (
    PHI_PI,
    PHI_ZERO,
    REGIME_BROKEN,
    REGIME_EXCEPTIONAL,
    REGIME_GENERIC_UNBROKEN,
    REGIME_NORMAL,
    BrokenPhaseError,
    EnergyEigensystem,
    FBasis,
    PTHamiltonian,
    PTParams,
    build_pt_hamiltonian,
    classify_point,
    energy_eigensystem,
    f_basis,
    verify_ladder,
)
from .states import (
    INITIAL_STATE_KINDS,
    CoefficientMatrix,
    GeneralizedDensityMatrix,
    InvalidStateError,
    build_rho_g,
    coefficients_from_matrix,
    generalized_expectation,
    initial_state,
    lambda_closed_form,
    lambda_eigenvalues,
    passive_state,
    rho_g_closed_form,
)
from .ergotropy import ErgotropyResult, ergotropy_closed_form, ergotropy_numeric
from .opensystem import (
    BathSpec,
    CompositeSystem,
    Trajectory,
    annihilation_op,
    build_composite,
    check_eta_unitarity,
    evolve,
    sigma_g_ops,
    thermal_state,
)
from .thermo import (
    ThermoRecord,
    entropy_production,
    heat_exchanged,
    internal_energy_change,
    relative_entropy,
    thermo_records,
    third_law_scan,
    von_neumann_entropy,
    work_done,
)
from .experiments import (
    DEFAULT_TEMPERATURES,
    ConfigError,
    RunConfig,
    RunResult,
    apply_overrides,
    cmd_closed_ergotropy,
    cmd_laws,
    cmd_open_ergotropy,
    cmd_sweep,
    cmd_third_law,
    load_config,
    time_grid,
)

__all__ = [name for name in dir() if not name.startswith("_")]
