"""
Running the circuit
===================

Statevector run of the compiled circuit, compared with exact evolution under
the 16x16 Hamiltonian and with the analytic particle numbers.
"""

import numpy as np

from cosmoqc import (
    REFERENCE_PARAMS,
    build_evolution_circuit,
    exact_oracle_state,
    init_state,
    n_expected_full,
    n_expected_truncated,
    particle_number,
    run_circuit,
)

print("    x    n_circuit    n_exact     n_trunc     n_full")
for x in np.linspace(-2, 2, 9):
    p = REFERENCE_PARAMS.with_(rho=10 ** x)
    psi = run_circuit(build_evolution_circuit(p), init_state(4, "0000"))
    print(
        f"{x:5.1f}  {particle_number(psi):10.6f}  {particle_number(exact_oracle_state(p)):10.6f}"
        f"  {n_expected_truncated(p):10.6f}  {n_expected_full(p):10.6f}"
    )

# shot noise: 8192 samples per observable
rng = np.random.default_rng(1)
p = REFERENCE_PARAMS.with_(rho=100.0)
psi = run_circuit(build_evolution_circuit(p), init_state(4, "0000"))
print(f"\nrho=100 with 8192 shots: {particle_number(psi, shots=8192, rng=rng):.4f}")
