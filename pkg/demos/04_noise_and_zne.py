"""
Noise and zero-noise extrapolation
==================================

Depolarizing noise after every gate, then folding the circuit to 3x and 5x
its depth and extrapolating back to zero noise.
"""

from cosmoqc import REFERENCE_NOISE, REFERENCE_PARAMS, ZneConfig, build_evolution_circuit, init_state, run_circuit
from cosmoqc.mitigation import error_budget, mitigated_expectations
from cosmoqc.paulicompile import gate_counts
from cosmoqc.simcore import PARTICLE_OBSERVABLES, particle_number, particle_number_from_expectations

circ = build_evolution_circuit(REFERENCE_PARAMS.with_(rho=100.0))
ideal = particle_number(run_circuit(circ, init_state(4, "0000")))

n1, n2 = gate_counts(circ)
print(f"crude error estimate for this circuit: {error_budget(n1, n2, REFERENCE_NOISE.eps1, REFERENCE_NOISE.eps2)[1]:.3f}")

for method in ("linear", "richardson-quadratic", "exponential"):
    res, raw = mitigated_expectations(circ, list(PARTICLE_OBSERVABLES), REFERENCE_NOISE, ZneConfig((1, 3, 5), method))
    noisy = particle_number_from_expectations(raw[1])
    zne = particle_number_from_expectations({w: r.value for w, r in res.items()})
    print(f"{method:22s} ideal={ideal:.4f}  noisy={noisy:.4f}  mitigated={zne:.4f}")

# ZZZZ is conserved by the evolution and decays as a single exponential
res, raw = mitigated_expectations(circ, ["ZZZZ"], REFERENCE_NOISE, ZneConfig((1, 3, 5), "exponential"))
print("\nZZZZ by scale:", {s: round(v["ZZZZ"], 5) for s, v in raw.items()}, "->", round(res["ZZZZ"].value, 5))
