"""
From Hamiltonian to gates
=========================

The interaction is a sum of sixteen weight-4 Pauli strings. Each becomes a
CNOT ladder around one RX rotation.
"""

from cosmoqc import REFERENCE_PARAMS, build_evolution_circuit, export_qasm
from cosmoqc.paulicompile import compile_pauli_exponential, gate_counts, peephole

# a single string, exp(-i 0.1 XXYY)
one = compile_pauli_exponential("XXYY", 0.1)
print("XXYY:", " ".join(map(repr, one.gates)))

# the whole evolution
circ = build_evolution_circuit(REFERENCE_PARAMS)
n1, n2 = gate_counts(circ)
print(f"\nfull circuit: {n1} one-qubit, {n2} two-qubit gates")

# neighbouring exponentials share S gates and CNOTs that cancel
n1, n2 = gate_counts(peephole(circ))
print(f"after peephole: {n1} one-qubit, {n2} two-qubit gates")

print("\nfirst QASM lines:")
print("\n".join(export_qasm(circ).splitlines()[:10]))
