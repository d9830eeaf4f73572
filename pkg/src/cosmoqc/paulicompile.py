"""Lowering of the pair-creation Hamiltonian to elementary gates.

The interaction Hamiltonian on four qubits is

    H = (w_out / 4) (Re(ab*) A - Im(ab*) B)

with ``A`` and ``B`` the eight-term sums of weight-4 {X, Y} strings listed in
``A_TERMS`` / ``B_TERMS``. Each ``exp(-i theta P)`` is compiled to a CNOT
ladder anchored on qubit 0 around a single ``RX`` on qubit 0, with ``S``
conjugations converting X into Y where the word asks for it.

Qubit 0 is the leftmost letter of every word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .cosmology import BogoliubovPair, CosmologyParams, ModeFrequencies, bogoliubov, frequencies

__all__ = [
    "A_TERMS",
    "B_TERMS",
    "CompileError",
    "PauliString",
    "Gate",
    "Circuit",
    "hamiltonian_terms",
    "compile_pauli_exponential",
    "build_evolution_circuit",
    "peephole",
    "gate_counts",
    "export_qasm",
]

# (word, sign) in the order the sums are written out.
A_TERMS: tuple[tuple[str, int], ...] = (
    ("XXXX", +1), ("YYYY", +1), ("XXYY", +1), ("XYXY", -1),
    ("YXXY", +1), ("XYYX", +1), ("YXYX", -1), ("YYXX", +1),
)
B_TERMS: tuple[tuple[str, int], ...] = (
    ("XXXY", +1), ("XXYX", -1), ("XYXX", +1), ("YXXX", -1),
    ("XYYY", +1), ("YXYY", -1), ("YYXY", +1), ("YYYX", -1),
)

ONE_QUBIT_KINDS = frozenset({"x", "s", "sdg", "rx", "rz"})
TWO_QUBIT_KINDS = frozenset({"cx"})
_PARAMETRIC = frozenset({"rx", "rz"})
_INVERSE_KIND = {"x": "x", "s": "sdg", "sdg": "s", "rx": "rx", "rz": "rz", "cx": "cx"}


class CompileError(ValueError):
    pass


@dataclass(frozen=True)
class PauliString:
    word: str
    coeff: float = 1.0

    def __post_init__(self):
        if not self.word or any(ch not in "IXYZ" for ch in self.word):
            raise ValueError(f"bad Pauli word {self.word!r}")


@dataclass(frozen=True)
class Gate:
    """One elementary gate. ``kind`` is the QASM mnemonic."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind in ONE_QUBIT_KINDS:
            if len(self.qubits) != 1:
                raise ValueError(f"{self.kind} acts on one qubit")
        elif self.kind in TWO_QUBIT_KINDS:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError("cx needs distinct control and target")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind in _PARAMETRIC:
            if self.angle is None or not np.isfinite(self.angle):
                raise ValueError(f"{self.kind} needs a finite angle")
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")

    def inverse(self) -> "Gate":
        angle = None if self.angle is None else -self.angle
        return Gate(_INVERSE_KIND[self.kind], self.qubits, angle)

    def __repr__(self):
        q = ",".join(map(str, self.qubits))
        if self.angle is None:
            return f"{self.kind}[{q}]"
        return f"{self.kind}({self.angle:.6g})[{q}]"


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits or min(g.qubits) < 0:
                raise ValueError(f"{g!r} outside a {self.n_qubits}-qubit register")

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, tuple(g.inverse() for g in reversed(self.gates)))

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)


# --- Pauli conjugation bookkeeping -------------------------------------------

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_S = np.diag([1, 1j])
_CX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def _match(mat: np.ndarray, n: int) -> tuple[complex, str]:
    for letters in itertools.product("IXYZ", repeat=n):
        ref = _PAULI[letters[0]]
        for ch in letters[1:]:
            ref = np.kron(ref, _PAULI[ch])
        for phase in (1, -1, 1j, -1j):
            if np.allclose(mat, phase * ref, atol=1e-12):
                return phase, "".join(letters)
    raise AssertionError("not a Pauli")  # pragma: no cover


@lru_cache(maxsize=None)
def _heisenberg_table(kind: str) -> dict[str, tuple[complex, str]]:
    """Map P -> g^dag P g for a Clifford gate, on its own support."""
    if kind == "cx":
        u, n = _CX, 2
    elif kind == "s":
        u, n = _S, 1
    elif kind == "sdg":
        u, n = _S.conj().T, 1
    else:
        raise KeyError(kind)
    table = {}
    for letters in itertools.product("IXYZ", repeat=n):
        p = _PAULI[letters[0]]
        for ch in letters[1:]:
            p = np.kron(p, _PAULI[ch])
        table["".join(letters)] = _match(u.conj().T @ p @ u, n)
    return table


def _conjugate_through(word: str, phase: complex, gates: Iterable[Gate]) -> tuple[complex, str]:
    """Return L^dag (phase * word) L where L is ``gates`` in time order."""
    letters = list(word)
    for g in reversed(list(gates)):
        sub = "".join(letters[q] for q in g.qubits)
        ph, new = _heisenberg_table(g.kind)[sub]
        phase *= ph
        for q, ch in zip(g.qubits, new):
            letters[q] = ch
    return phase, "".join(letters)


# --- compilation ---------------------------------------------------------------


def hamiltonian_terms(
    bog: BogoliubovPair, freqs: ModeFrequencies, t: float
) -> list[tuple[PauliString, float]]:
    """The 16 weighted strings of the interaction Hamiltonian and their angles.

    Each pair ``(P, theta)`` stands for the factor ``exp(-i theta P)``; the
    string coefficient is the Hamiltonian weight, ``theta = coeff * t``.
    A-terms come first, then B-terms, each in their written order.
    """
    ab = bog.alpha_beta_conj
    quarter = 0.25 * freqs.omega_out
    out = []
    for word, sign in A_TERMS:
        coeff = sign * quarter * ab.real
        out.append((PauliString(word, coeff), coeff * t))
    for word, sign in B_TERMS:
        coeff = -sign * quarter * ab.imag
        out.append((PauliString(word, coeff), coeff * t))
    return out


def _ladder(word: str) -> list[Gate]:
    """Left half of the conjugation M (time order) for a word over {X, Y}."""
    n = len(word)
    ys = [q for q in range(1, n) if word[q] == "Y"]
    gates = [Gate("s", (q,)) for q in sorted(ys, reverse=True)]
    # S_0 between ladder rungs whose target carries a Y; one more on the
    # outside when the total number of Y letters is odd fixes qubit 0.
    if word.count("Y") % 2:
        gates.append(Gate("s", (0,)))
    for q in range(n - 1, 0, -1):
        gates.append(Gate("cx", (0, q)))
        if word[q] == "Y":
            gates.append(Gate("s", (0,)))
    return gates


def compile_pauli_exponential(p: PauliString | str, angle: float) -> Circuit:
    """Circuit equal to exp(-i angle P) up to a global phase.

    ``P`` must be a word over {X, Y} with at least two letters. The result is
    ``M, RX_0(+/- 2 angle), M^dag`` with ``M`` built from S gates and the
    CNOT(0, j) ladder; the rotation sign follows from conjugating X_0 back
    through ``M``.
    """
    word = p.word if isinstance(p, PauliString) else p
    if len(word) < 2 or any(ch not in "XY" for ch in word):
        raise CompileError(f"only {{X,Y}} words are supported, got {word!r}")
    left = _ladder(word)
    phase, img = _conjugate_through("X" + "I" * (len(word) - 1), 1, left)
    assert img == word and phase in (1, -1), (word, img, phase)
    center = Gate("rx", (0,), 2.0 * float(phase.real) * angle + 0.0)
    gates = left + [center] + [g.inverse() for g in reversed(left)]
    return Circuit(len(word), gates)


def build_evolution_circuit(
    params: CosmologyParams, optimize: bool = False
) -> Circuit:
    """Full circuit: X_1 X_3 preparing |0101>, then the 16 exponentials.

    Acting on |0000>. With ``optimize`` a peephole pass cancels adjacent
    inverse pairs between neighbouring exponentials; off by default so the
    two-qubit count stays at 96.
    """
    bog = bogoliubov(params)
    freqs = frequencies(params)
    gates = [Gate("x", (1,)), Gate("x", (3,))]
    for pauli, angle in hamiltonian_terms(bog, freqs, params.t):
        gates.extend(compile_pauli_exponential(pauli, angle).gates)
    circ = Circuit(4, gates)
    return peephole(circ) if optimize else circ


def peephole(c: Circuit) -> Circuit:
    """Cancel adjacent inverse pairs and merge adjacent equal-axis rotations.

    Two gates are adjacent when they act on the same qubits and no gate in
    between touches any of those qubits. Repeats until nothing changes.
    """
    out: list[Gate] = []
    for g in c.gates:
        j = len(out) - 1
        while j >= 0 and not set(out[j].qubits) & set(g.qubits):
            j -= 1
        if j >= 0 and out[j].qubits == g.qubits:
            merged = _merge(out[j], g)
            if merged is not _NO_MERGE:
                if merged is None:
                    del out[j]
                else:
                    out[j] = merged
                continue
        out.append(g)
    return Circuit(c.n_qubits, out)


_NO_MERGE = object()


def _merge(a: Gate, b: Gate):
    if a.kind in _PARAMETRIC and a.kind == b.kind:
        total = a.angle + b.angle
        return None if total == 0.0 else Gate(a.kind, a.qubits, total)
    if _INVERSE_KIND[a.kind] == b.kind and a.kind not in _PARAMETRIC:
        return None
    return _NO_MERGE


def gate_counts(c: Circuit) -> tuple[int, int]:
    """(one-qubit count, two-qubit count)."""
    n1 = sum(1 for g in c.gates if len(g.qubits) == 1)
    return n1, len(c.gates) - n1


def _fmt_angle(x: float) -> str:
    return format(x + 0.0, ".17g")


def export_qasm(c: Circuit) -> str:
    """OpenQASM 2.0 text for ``c``; one gate per line, in circuit order."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n_qubits}];"]
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.angle is None:
            lines.append(f"{g.kind} {args};")
        else:
            lines.append(f"{g.kind}({_fmt_angle(g.angle)}) {args};")
    return "\n".join(lines) + "\n"
