"""Exact state-vector / density-matrix simulation and read-outs.

States are plain numpy arrays: a state vector has shape ``(2**n,)``, a
density matrix ``(2**n, 2**n)``. Qubit 0 is the most significant bit of the
basis index, so the ket ``|q0 q1 q2 q3>`` = ``|0101>`` sits at index 5.
"""

from __future__ import annotations

import math
from typing import Mapping

import numpy as np

from .cosmology import CosmologyParams, bogoliubov, frequencies
from .paulicompile import Circuit, Gate

__all__ = [
    "VACUUM",
    "PAIR",
    "PARTICLE_OBSERVABLES",
    "FIDELITY_OBSERVABLES",
    "gate_matrix",
    "init_state",
    "apply_gate",
    "run_circuit",
    "circuit_unitary",
    "pauli_matrix",
    "expectation",
    "particle_number",
    "particle_number_from_expectations",
    "interaction_hamiltonian",
    "exact_oracle_state",
    "partial_trace_mode",
    "fidelity",
    "theoretical_reduced_state",
    "fidelity_first_order",
    "populations_from_expectations",
]

VACUUM = "0101"
PAIR = "1010"

# <n> of the second mode = P(1010) + P(0110) = (1 + sum c_w <w>) / 8
PARTICLE_OBSERVABLES: dict[str, int] = {
    "IIIZ": +1,
    "IIZI": -1,
    "IIZZ": -1,
    "ZZII": -1,
    "ZZIZ": -1,
    "ZZZI": +1,
    "ZZZZ": +1,
}
# two-qubit IZ, ZI, ZZ on the second mode, padded to four qubits
FIDELITY_OBSERVABLES = ("IIIZ", "IIZI", "IIZZ")

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_FIXED = {
    "x": _PAULI["X"],
    "s": np.diag([1, 1j]).astype(complex),
    "sdg": np.diag([1, -1j]).astype(complex),
    "cx": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}


def gate_matrix(g: Gate) -> np.ndarray:
    if g.kind == "rx":
        c, s = math.cos(g.angle / 2), math.sin(g.angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if g.kind == "rz":
        h = g.angle / 2
        return np.diag([np.exp(-1j * h), np.exp(1j * h)])
    return _FIXED[g.kind]


def pauli_matrix(word: str) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for ch in word:
        out = np.kron(out, _PAULI[ch])
    return out


def _n_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def init_state(n_qubits: int, bitstring: str) -> np.ndarray:
    """Computational basis state; ``bitstring[0]`` is qubit 0."""
    if len(bitstring) != n_qubits or set(bitstring) - {"0", "1"}:
        raise ValueError(f"bad bitstring {bitstring!r} for {n_qubits} qubits")
    psi = np.zeros(1 << n_qubits, dtype=complex)
    psi[int(bitstring, 2)] = 1.0
    return psi


def _apply_to_axes(tensor: np.ndarray, op: np.ndarray, axes: tuple[int, ...]) -> np.ndarray:
    k = len(axes)
    op_t = op.reshape((2,) * (2 * k))
    moved = np.tensordot(op_t, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(moved, list(range(k)), list(axes))


def apply_gate(state: np.ndarray, g: Gate) -> np.ndarray:
    """Apply ``g`` to a state vector or density matrix; returns a new array."""
    u = gate_matrix(g)
    if state.ndim == 1:
        n = _n_qubits(state.shape[0])
        t = _apply_to_axes(state.reshape((2,) * n), u, g.qubits)
        return t.reshape(-1)
    n = _n_qubits(state.shape[0])
    t = state.reshape((2,) * (2 * n))
    t = _apply_to_axes(t, u, g.qubits)
    t = _apply_to_axes(t, u.conj(), tuple(q + n for q in g.qubits))
    return t.reshape(state.shape)


def run_circuit(c: Circuit, initial: np.ndarray) -> np.ndarray:
    if _n_qubits(initial.shape[0]) != c.n_qubits:
        raise ValueError("state and circuit sizes differ")
    state = np.asarray(initial, dtype=complex)
    for g in c.gates:
        state = apply_gate(state, g)
    return state


def circuit_unitary(c: Circuit) -> np.ndarray:
    """Dense unitary of ``c`` (columns are images of basis states)."""
    dim = 1 << c.n_qubits
    cols = [run_circuit(c, np.eye(dim, dtype=complex)[:, j]) for j in range(dim)]
    return np.stack(cols, axis=1)


def _z_signs(word: str) -> np.ndarray:
    n = len(word)
    idx = np.arange(1 << n)
    parity = np.zeros(1 << n, dtype=int)
    for q, ch in enumerate(word):
        if ch == "Z":
            parity ^= (idx >> (n - 1 - q)) & 1
        elif ch != "I":
            raise ValueError(f"read-out words are over {{I, Z}}, got {word!r}")
    return 1 - 2 * parity


def _probabilities(state: np.ndarray) -> np.ndarray:
    if state.ndim == 1:
        return np.abs(state) ** 2
    return np.clip(np.real(np.diag(state)), 0.0, None)


def expectation(
    state: np.ndarray,
    word: str,
    shots: int | None = None,
    rng: np.random.Generator | None = None,
) -> float:
    """<word> for a diagonal {I, Z} observable.

    Exact by default. With ``shots`` the value is estimated from a
    multinomial sample of computational-basis outcomes drawn with ``rng``.
    """
    signs = _z_signs(word)
    if signs.shape[0] != state.shape[0]:
        raise ValueError("observable and state sizes differ")
    probs = _probabilities(state)
    if shots is None:
        return float(signs @ probs)
    if rng is None:
        raise ValueError("shot sampling needs an explicit rng")
    counts = rng.multinomial(shots, probs / probs.sum())
    return float(signs @ counts) / shots


def particle_number_from_expectations(expvals: Mapping[str, float]) -> float:
    return (1.0 + sum(c * expvals[w] for w, c in PARTICLE_OBSERVABLES.items())) / 8.0


def particle_number(state: np.ndarray, shots: int | None = None, rng=None) -> float:
    """Excitation probability of the second mode from seven Z-string values."""
    ev = {w: expectation(state, w, shots, rng) for w in PARTICLE_OBSERVABLES}
    return particle_number_from_expectations(ev)


# --- exact evolution oracle -----------------------------------------------------

_SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)  # (X + iY)/2
_SIGMA_MINUS = _SIGMA_PLUS.T.copy()


def interaction_hamiltonian(params: CosmologyParams) -> np.ndarray:
    """16x16 matrix of 2 w_out (ab* a+ a- + h.c.) in the qubit encoding.

    a+ = s-^0 s+^1 and a- = s-^2 s+^3, built straight from the ladder
    matrices (no Pauli expansion involved).
    """
    bog = bogoliubov(params)
    w_out = frequencies(params).omega_out
    lower = np.kron(
        np.kron(_SIGMA_MINUS, _SIGMA_PLUS), np.kron(_SIGMA_MINUS, _SIGMA_PLUS)
    )
    term = 2.0 * w_out * bog.alpha_beta_conj * lower
    return term + term.conj().T


def _expm_hermitian(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i t h) for Hermitian ``h`` by eigendecomposition."""
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * t * vals)) @ vecs.conj().T


def exact_oracle_state(params: CosmologyParams) -> np.ndarray:
    """exp(-i H t)|0101> evaluated exactly in the four-qubit space."""
    u = _expm_hermitian(interaction_hamiltonian(params), params.t)
    return u @ init_state(4, VACUUM)


# --- reduced states and fidelity ----------------------------------------------------


def partial_trace_mode(state: np.ndarray, keep: str = "second") -> np.ndarray:
    """4x4 density matrix of one mode: ``"first"`` keeps qubits 0,1 and
    ``"second"`` keeps qubits 2,3."""
    if keep not in ("first", "second"):
        raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")
    keep_first = keep == "first"
    if state.shape[0] != 16:
        raise ValueError("need a four-qubit state")
    if state.ndim == 1:
        psi = state.reshape(4, 4)  # [mode1, mode2]
        if keep_first:
            return psi @ psi.conj().T
        return psi.T @ psi.conj()
    r = state.reshape(4, 4, 4, 4)  # [a, b, a', b']
    if keep_first:
        return np.einsum("abcb->ac", r)
    return np.einsum("abad->bd", r)


_PSD_TOL = 1e-9


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(rho)
    return (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T


def _check_density(rho: np.ndarray, name: str) -> None:
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"{name} is not square")
    if not np.allclose(rho, rho.conj().T, atol=1e-8):
        raise ValueError(f"{name} is not Hermitian")
    if np.linalg.eigvalsh(rho).min() < -_PSD_TOL:
        raise ValueError(f"{name} is not positive semidefinite")


def fidelity(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Uhlmann fidelity Tr^2 sqrt(sqrt(rho) sigma sqrt(rho))."""
    if rho.shape != sigma.shape:
        raise ValueError("shape mismatch")
    _check_density(rho, "rho")
    _check_density(sigma, "sigma")
    # ||sqrt(rho) sqrt(sigma)||_1 squared; the singular values avoid taking
    # square roots of rounding-level eigenvalues, which would cost ~1e-8
    sv = np.linalg.svd(_psd_sqrt(rho) @ _psd_sqrt(sigma), compute_uv=False)
    return float(np.sum(sv) ** 2)


def theoretical_reduced_state(params: CosmologyParams, keep: str = "second") -> np.ndarray:
    """Reference one-mode state from U expanded to second order.

    (1 - i H t - H^2 t^2 / 2)|0101>, renormalised, other mode traced out.
    """
    h = interaction_hamiltonian(params)
    v = init_state(4, VACUUM)
    ht = params.t * (h @ v)
    psi = v - 1j * ht - 0.5 * params.t * (h @ ht)
    psi = psi / np.linalg.norm(psi)
    return partial_trace_mode(psi, keep)


def _two_qubit_values(expvals: Mapping[str, float]) -> tuple[float, float, float]:
    if "IZ" in expvals:
        return expvals["IZ"], expvals["ZI"], expvals["ZZ"]
    return expvals["IIIZ"], expvals["IIZI"], expvals["IIZZ"]


def fidelity_first_order(expvals: Mapping[str, float], params: CosmologyParams) -> float:
    """Fidelity to the reference state, to first order in w_out t.

    ``expvals`` holds IZ, ZI, ZZ of the kept mode (or the padded words
    IIIZ, IIZI, IIZZ). A negative radicand from noisy inputs counts as 0.
    """
    iz, zi, zz = _two_qubit_values(expvals)
    bog = bogoliubov(params)
    w_out = frequencies(params).omega_out
    rad = max((1.0 - zz) ** 2 - (iz - zi) ** 2, 0.0)
    return 0.25 * (1.0 - iz + zi - zz) + math.sqrt(rad) * abs(bog.alpha) * abs(
        bog.beta
    ) * w_out * params.t


def populations_from_expectations(expvals: Mapping[str, float]) -> np.ndarray:
    """Diagonal 4x4 state of the kept mode from its IZ, ZI, ZZ values.

    Negative populations (possible after extrapolation) are clipped and the
    result renormalised.
    """
    iz, zi, zz = _two_qubit_values(expvals)
    p = np.empty(4)
    for idx, (b0, b1) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        s0, s1 = 1 - 2 * b0, 1 - 2 * b1
        p[idx] = 0.25 * (1 + s1 * iz + s0 * zi + s0 * s1 * zz)
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if total == 0:
        raise ValueError("no positive population left")
    return np.diag(p / total).astype(complex)
