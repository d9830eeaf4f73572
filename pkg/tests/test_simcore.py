import itertools
import math
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosmoqc.cosmology import REFERENCE_PARAMS, squeezing
from cosmoqc.paulicompile import Circuit, Gate, build_evolution_circuit
from cosmoqc.simcore import (
    PAIR,
    PARTICLE_OBSERVABLES,
    VACUUM,
    apply_gate,
    exact_oracle_state,
    expectation,
    fidelity,
    fidelity_first_order,
    init_state,
    interaction_hamiltonian,
    partial_trace_mode,
    particle_number,
    populations_from_expectations,
    run_circuit,
    theoretical_reduced_state,
)

Z = np.diag([1.0, -1.0])
I2 = np.eye(2)


def zmat(word):
    return reduce(np.kron, [Z if c == "Z" else I2 for c in word])


def random_state(seed, n=4):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return v / np.linalg.norm(v)


def random_density(seed, dim=4, rank=None):
    rng = np.random.default_rng(seed)
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    r = g @ g.conj().T
    return r / np.trace(r).real


def test_init_state_bit_order():
    v = init_state(4, "0101")
    assert v[5] == 1 and np.count_nonzero(v) == 1
    assert init_state(4, "1010")[10] == 1
    with pytest.raises(ValueError):
        init_state(4, "010")
    with pytest.raises(ValueError):
        init_state(2, "0a")


def test_x_gates_prepare_vacuum():
    c = Circuit(4, [Gate("x", (1,)), Gate("x", (3,))])
    np.testing.assert_array_equal(run_circuit(c, init_state(4, "0000")), init_state(4, VACUUM))


def test_apply_gate_on_density_matches_state():
    psi = random_state(3)
    g = Gate("cx", (2, 0))
    out = apply_gate(psi, g)
    rho = apply_gate(np.outer(psi, psi.conj()), g)
    np.testing.assert_allclose(rho, np.outer(out, out.conj()), atol=1e-14)


def test_cnot_orientation():
    # control 0 (most significant) flips target 3
    out = apply_gate(init_state(4, "1000"), Gate("cx", (0, 3)))
    np.testing.assert_array_equal(out, init_state(4, "1001"))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(["".join(w) for w in itertools.product("IZ", repeat=4)]))
def test_expectation_matches_matrix(seed, word):
    psi = random_state(seed)
    ref = np.vdot(psi, zmat(word) @ psi).real
    assert expectation(psi, word) == pytest.approx(ref, abs=1e-12)
    rho = np.outer(psi, psi.conj())
    assert expectation(rho, word) == pytest.approx(ref, abs=1e-12)


def test_expectation_sampling_is_seeded():
    psi = random_state(1)
    a = expectation(psi, "ZIZI", shots=1000, rng=np.random.default_rng(5))
    b = expectation(psi, "ZIZI", shots=1000, rng=np.random.default_rng(5))
    assert a == b
    assert abs(a - expectation(psi, "ZIZI")) < 0.15
    with pytest.raises(ValueError):
        expectation(psi, "ZIZI", shots=10)
    with pytest.raises(ValueError):
        expectation(psi, "XIII")


def test_particle_observable_is_pair_projector():
    op = (np.eye(16) + sum(c * zmat(w) for w, c in PARTICLE_OBSERVABLES.items())) / 8
    proj = np.zeros(16)
    proj[[0b1010, 0b0110]] = 1.0
    np.testing.assert_allclose(np.diag(op), proj, atol=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_particle_number_brute_force(seed):
    psi = random_state(seed)
    p = np.abs(psi) ** 2
    assert particle_number(psi) == pytest.approx(p[0b1010] + p[0b0110], abs=1e-12)


def test_particle_number_basis_states():
    assert particle_number(init_state(4, VACUUM)) == pytest.approx(0.0, abs=1e-15)
    assert particle_number(init_state(4, PAIR)) == pytest.approx(1.0, abs=1e-15)
    assert len(PARTICLE_OBSERVABLES) == 7


def test_oracle_stays_in_two_level_sector():
    for rho in (0.1, 1.0, 10.0, 1e6):
        psi = exact_oracle_state(REFERENCE_PARAMS.with_(rho=rho))
        assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-13)
        assert abs(psi[5]) ** 2 + abs(psi[10]) ** 2 == pytest.approx(1.0, abs=1e-13)


def test_oracle_rabi_form():
    # in the sector H is 2 w_out |ab| times a Pauli, so n = sin^2(r)
    p = REFERENCE_PARAMS.with_(rho=1e6)
    psi = exact_oracle_state(p)
    assert abs(psi[10]) ** 2 == pytest.approx(math.sin(squeezing(p)) ** 2, rel=1e-12)


def test_hamiltonian_is_hermitian_and_sector_supported():
    h = interaction_hamiltonian(REFERENCE_PARAMS.with_(rho=2.0))
    np.testing.assert_allclose(h, h.conj().T, atol=0)
    mask = np.zeros((16, 16), bool)
    mask[np.ix_([5, 10], [5, 10])] = True
    assert np.all(h[~mask] == 0)


def test_circuit_matches_oracle():
    for x in np.linspace(-2, 2, 9):
        p = REFERENCE_PARAMS.with_(rho=10 ** x)
        psi = run_circuit(build_evolution_circuit(p), init_state(4, "0000"))
        ov = abs(np.vdot(exact_oracle_state(p), psi)) ** 2
        # only the A/B splitting is approximate, an O(r^4) effect
        assert ov > 1 - 1e-5
        assert particle_number(psi) == pytest.approx(particle_number(exact_oracle_state(p)), abs=1e-4)


def test_partial_trace_product_state():
    a, b = random_state(1, 2), random_state(2, 2)
    psi = np.kron(a, b)
    np.testing.assert_allclose(partial_trace_mode(psi, "first"), np.outer(a, a.conj()), atol=1e-14)
    np.testing.assert_allclose(partial_trace_mode(psi, "second"), np.outer(b, b.conj()), atol=1e-14)
    rho = np.outer(psi, psi.conj())
    np.testing.assert_allclose(partial_trace_mode(rho, "second"), np.outer(b, b.conj()), atol=1e-14)
    with pytest.raises(ValueError):
        partial_trace_mode(psi, "both")


def test_fidelity_properties():
    r, s = random_density(1), random_density(2)
    assert fidelity(r, r) == pytest.approx(1.0, abs=1e-10)
    assert fidelity(r, s) == pytest.approx(fidelity(s, r), abs=1e-10)
    assert 0 <= fidelity(r, s) <= 1
    u, v = random_state(3, 2), random_state(4, 2)
    pure = fidelity(np.outer(u, u.conj()), np.outer(v, v.conj()))
    assert pure == pytest.approx(abs(np.vdot(u, v)) ** 2, abs=1e-10)
    assert fidelity(np.diag([1.0, 0, 0, 0]), np.diag([0, 1.0, 0, 0])) == pytest.approx(0, abs=1e-12)


def test_fidelity_rejects_bad_inputs():
    good = random_density(1)
    with pytest.raises(ValueError):
        fidelity(good, np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(ValueError):
        fidelity(good, good + np.triu(np.ones((4, 4)), 1))


def test_theoretical_state_close_to_exact_for_small_r():
    p = REFERENCE_PARAMS.with_(rho=100.0)
    r_unit = squeezing(p.with_(t=1.0))
    p = p.with_(t=1e-3 / r_unit)
    assert squeezing(p) == pytest.approx(1e-3)
    exact = partial_trace_mode(exact_oracle_state(p))
    theory = theoretical_reduced_state(p)
    assert fidelity(exact, theory) > 1 - 1e-10
    assert np.trace(theory).real == pytest.approx(1.0, abs=1e-14)


def test_first_order_fidelity():
    vac = {"IIIZ": -1.0, "IIZI": 1.0, "IIZZ": -1.0}
    assert fidelity_first_order(vac, REFERENCE_PARAMS) == pytest.approx(1.0)
    p = REFERENCE_PARAMS.with_(rho=1.0)
    psi = run_circuit(build_evolution_circuit(p), init_state(4, "0000"))
    ev = {w: expectation(psi, w) for w in ("IIIZ", "IIZI", "IIZZ")}
    f1 = fidelity_first_order(ev, p)
    assert f1 == pytest.approx(fidelity(theoretical_reduced_state(p), partial_trace_mode(psi)), abs=1e-3)
    # short aliases for the kept mode
    assert fidelity_first_order({"IZ": -1.0, "ZI": 1.0, "ZZ": -1.0}, p) == pytest.approx(1.0)


def test_populations_from_expectations():
    psi = init_state(4, PAIR)
    ev = {w: expectation(psi, w) for w in ("IIIZ", "IIZI", "IIZZ")}
    np.testing.assert_allclose(populations_from_expectations(ev), np.diag([0, 0, 1.0, 0]), atol=1e-14)
    bad = {"IIIZ": 1.2, "IIZI": 1.2, "IIZZ": 1.2}
    pops = np.diag(populations_from_expectations(bad)).real
    assert pops.min() >= 0 and pops.sum() == pytest.approx(1.0)
