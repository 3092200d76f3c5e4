"""Walk through the Hermitian-basis construction for the two-level model.

For a few values of the gain/loss parameter r (at fixed s = 1) this script
builds the rescaled Hamiltonian, the F = H^dag H eigenbasis, and the
biorthonormal energy eigensystem, then prints the quantities that make the
construction tick: f, |a|, |E|, the metric, and the residuals of the
anticommutator, ladder and biorthonormality identities.
"""

import numpy as np

from ptthermo import (
    PTParams,
    build_pt_hamiltonian,
    classify_point,
    energy_eigensystem,
    f_basis,
    verify_ladder,
)

np.set_printoptions(precision=5, suppress=True)

for r in [0.0, 0.5, 0.95]:
    params = PTParams(r, 1.0)
    h = build_pt_hamiltonian(params)
    basis = f_basis(h)
    esys = energy_eigensystem(h)

    print(f"=== r = {r}, s = 1  ({classify_point(params)} point) ===")
    print("rescaled H:")
    print(h.matrix)
    anti = h.matrix @ h.matrix.conj().T + h.matrix.conj().T @ h.matrix
    print(f"anticommutator residual |{{H,H^dag}} - I| = {np.abs(anti - np.eye(2)).max():.2e}")
    print(f"f = {basis.f:.5f}   (1 - f = {1 - basis.f:.5f})")
    print(f"ladder residuals: {['%.1e' % x for x in verify_ladder(h, basis)]}")
    print(f"|E| = {esys.energy_abs:.5f}   |a| = {esys.a_mag:.5f}")
    gram = esys.basis_dual().conj().T @ esys.basis_right()
    print(f"biorthonormality |<dual_i|ket_j> - delta_ij| = {np.abs(gram - np.eye(2)).max():.2e}")
    print("metric eta:")
    print(esys.eta)
    pseudo = np.linalg.inv(esys.eta) @ h.matrix.conj().T @ esys.eta
    print(f"pseudo-hermiticity residual = {np.abs(pseudo - h.matrix).max():.2e}")
    print()

print("The exceptional boundary r = s is refused by construction:")
try:
    build_pt_hamiltonian(PTParams(1.0, 1.0))
except ValueError as exc:
    print(f"  {exc}")
