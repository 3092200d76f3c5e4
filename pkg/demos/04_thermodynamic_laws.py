"""Check the three laws of thermodynamics along open-system trajectories.

First law: dU = dW - dQ_B holds to round-off at every time step because the
total generator is conserved. Second law: the entropy production (relative
entropy between the evolved composite and the product of its reductions with
the initial bath) never dips below zero. Third law: with a weak coupling the
peak system entropy scales down with the bath temperature.
"""

import warnings

import numpy as np

from ptthermo import (
    BathSpec,
    PTParams,
    build_composite,
    build_pt_hamiltonian,
    energy_eigensystem,
    evolve,
    initial_state,
    thermo_records,
    third_law_scan,
)

times = np.linspace(0.0, 20.0, 201)

print("--- first and second law (excited state, g = 0.5) ---")
for r in [0.0, 0.5, 0.95]:
    h = build_pt_hamiltonian(PTParams(r, 1.0))
    esys = energy_eigensystem(h)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # 15-level bath keeps ~5% tail at T=10
        bath = BathSpec(2.0, 15, 10.0)
    comp = build_composite(h, esys, bath, 0.5)
    traj = evolve(comp, initial_state("excited", esys), bath, times)
    records = thermo_records(h, esys, comp, bath, traj)
    max_residual = max(abs(rec.first_law_residual) for rec in records)
    min_sigma = min(rec.sigma for rec in records)
    print(f"r = {r}: max |dU - dW + dQ_B| = {max_residual:.2e}, min Sigma = {min_sigma:+.2e}")

print()
print("--- third law (excited state, weak coupling g = 0.05, r = 0.5) ---")
table = third_law_scan(
    PTParams(0.5, 1.0), "excited", 0.05, 2.0, 15, [10.0, 1.0, 0.1, 1e-3], times
)
for temperature, s_max in table:
    print(f"T = {temperature:>6g}: max_t S(rho_G) = {s_max:.5f}")
print()
print("The peak entropy decreases with T. Its T -> 0 floor is set by the")
print("detuned vacuum exchange |E+,0> <-> |E-,1>: h(4g^2/(4g^2 + delta^2)),")
print("so it vanishes only as the coupling itself is taken small.")
