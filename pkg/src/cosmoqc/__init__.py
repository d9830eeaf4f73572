"""Gate-level simulation of particle creation by an expanding universe.

A massive scalar field on a tanh-shaped conformal expansion; two opposite
momentum modes, one excitation each, four qubits.
"""

from .cosmology import (
    REFERENCE_PARAMS,
    BogoliubovPair,
    CosmologyParams,
    ModeFrequencies,
    bogoliubov,
    frequencies,
    n_expected_full,
    n_expected_truncated,
    scale_factor,
    thermal_distribution,
)
from .mitigation import REFERENCE_NOISE, NoiseModel, ZneConfig, fold_circuit, run_noisy, zne_extrapolate
from .paulicompile import Circuit, Gate, PauliString, build_evolution_circuit, export_qasm
from .simcore import (
    exact_oracle_state,
    fidelity,
    init_state,
    partial_trace_mode,
    particle_number,
    run_circuit,
)
from .specfun import complex_gamma, complex_loggamma

__version__ = "0.1.0"

__all__ = [
    "REFERENCE_PARAMS", "BogoliubovPair", "CosmologyParams", "ModeFrequencies",
    "bogoliubov", "frequencies", "n_expected_full", "n_expected_truncated",
    "scale_factor", "thermal_distribution",
    "REFERENCE_NOISE", "NoiseModel", "ZneConfig", "fold_circuit", "run_noisy", "zne_extrapolate",
    "Circuit", "Gate", "PauliString", "build_evolution_circuit", "export_qasm",
    "exact_oracle_state", "fidelity", "init_state", "partial_trace_mode",
    "particle_number", "run_circuit",
    "complex_gamma", "complex_loggamma",
]
