"""
Tests for the statevector simulator.

    - gate definitions and unitarity
    - agreement with an explicit Kronecker-product oracle
    - norm preservation on random circuits
    - inner products, probabilities and seeded sampling
"""
from itertools import permutations
from math import pi, sqrt

import numpy as np
import pytest

from conftest import random_state
from qkernel.errors import ArgumentError, CapacityError, DimensionError, QubitIndexError
from qkernel.sim import (
    Circuit,
    Gate,
    GateKind,
    StateVector,
    apply_gate,
    inner_product,
    marginal_probabilities,
    measure_probabilities,
    run_circuit,
    sample,
    total_variation,
    zero_state,
)

SQRT2_INV = 1 / sqrt(2)
ALL_KINDS = list(GateKind)


def basis_state(n, index):
    amps = np.zeros(2**n, dtype=complex)
    amps[index] = 1
    return StateVector(n, amps)


def kron_oracle(gate, n):
    """Full 2^n x 2^n unitary assembled from per-qubit outer products."""
    m = gate.matrix()
    k = len(gate.targets)
    full = np.zeros((2**n, 2**n), dtype=complex)
    for row in range(2**k):
        for col in range(2**k):
            if m[row, col] == 0:
                continue
            factors = []
            for q in range(n):
                if q in gate.targets:
                    pos = gate.targets.index(q)
                    a = (row >> (k - 1 - pos)) & 1
                    b = (col >> (k - 1 - pos)) & 1
                    op = np.zeros((2, 2))
                    op[a, b] = 1
                else:
                    op = np.eye(2)
                factors.append(op)
            term = factors[0]
            for f in factors[1:]:
                term = np.kron(term, f)
            full += m[row, col] * term
    return full


def make_gate(kind, targets, rng):
    theta = rng.uniform(-2 * pi, 2 * pi) if kind.parameterized else None
    return Gate(kind, targets, theta)


# =============================================================================
# Construction
# =============================================================================

def test_zero_state_one_qubit():
    np.testing.assert_array_equal(zero_state(1).amplitudes, [1, 0])


def test_zero_state_two_qubits():
    np.testing.assert_array_equal(zero_state(2).amplitudes, [1, 0, 0, 0])


@pytest.mark.parametrize("n", [0, 25, -1])
def test_zero_state_capacity(n):
    with pytest.raises(CapacityError, match="24"):
        zero_state(n)


def test_circuit_accepts_largest_register():
    circuit = Circuit(24).h(23).cnot(0, 23)
    assert circuit.n_qubits == 24
    with pytest.raises(CapacityError):
        Circuit(25)


def test_state_rejects_unnormalized():
    with pytest.raises(ValueError):
        StateVector(1, [1, 1])


def test_state_rejects_wrong_length():
    with pytest.raises(DimensionError):
        StateVector(2, [1, 0])


# =============================================================================
# Gates
# =============================================================================

def test_hadamard_on_zero():
    state = apply_gate(zero_state(1), Gate(GateKind.H, (0,)))
    np.testing.assert_allclose(state.amplitudes, [SQRT2_INV, SQRT2_INV], atol=1e-12)


def test_x_on_zero():
    state = apply_gate(zero_state(1), Gate(GateKind.X, (0,)))
    np.testing.assert_allclose(state.amplitudes, [0, 1], atol=1e-12)


def test_cnot_on_10():
    # qubit 0 is the most significant bit: |10> is index 2
    state = apply_gate(basis_state(2, 2), Gate(GateKind.CNOT, (0, 1)))
    np.testing.assert_allclose(state.amplitudes, basis_state(2, 3).amplitudes, atol=1e-12)


def test_cnot_reversed_control():
    # |01> with control on qubit 1 flips qubit 0 -> |11>
    state = apply_gate(basis_state(2, 1), Gate(GateKind.CNOT, (1, 0)))
    np.testing.assert_allclose(state.amplitudes, basis_state(2, 3).amplitudes, atol=1e-12)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_gate_unitarity(kind):
    rng = np.random.default_rng(11)
    targets = tuple(range(kind.arity))
    for _ in range(100 if kind.parameterized else 1):
        u = make_gate(kind, targets, rng).matrix()
        np.testing.assert_allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-12)


@pytest.mark.parametrize("kind", ALL_KINDS)
def test_gate_inverse(kind):
    rng = np.random.default_rng(3)
    gate = make_gate(kind, tuple(range(kind.arity)), rng)
    np.testing.assert_allclose(gate.inverse().matrix() @ gate.matrix(), np.eye(2**kind.arity), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("kind", ALL_KINDS)
def test_apply_gate_matches_kron_oracle(kind, n):
    if kind.arity > n:
        pytest.skip("two-qubit gate on one qubit")
    rng = np.random.default_rng(100 * n + ALL_KINDS.index(kind))
    target_sets = list(permutations(range(n), kind.arity))
    for trial in range(100):
        targets = target_sets[trial % len(target_sets)]
        gate = make_gate(kind, targets, rng)
        amps = random_state(rng, n)
        got = apply_gate(StateVector(n, amps), gate).amplitudes
        np.testing.assert_allclose(got, kron_oracle(gate, n) @ amps, atol=1e-12)


def test_apply_gate_bad_target():
    with pytest.raises(QubitIndexError):
        apply_gate(zero_state(2), Gate(GateKind.H, (2,)))
    with pytest.raises(IndexError):
        apply_gate(zero_state(2), Gate(GateKind.CNOT, (0, 5)))


@pytest.mark.parametrize(
    "kind,targets,theta",
    [
        (GateKind.CNOT, (1, 1), None),
        (GateKind.H, (0, 1), None),
        (GateKind.RY, (0,), None),
        (GateKind.X, (0,), 0.5),
        (GateKind.P, (0,), float("nan")),
    ],
)
def test_gate_validation(kind, targets, theta):
    with pytest.raises(ArgumentError):
        Gate(kind, targets, theta)


# =============================================================================
# Circuits
# =============================================================================

def test_empty_circuit_is_identity(rng):
    state = StateVector(3, random_state(rng, 3))
    out = run_circuit(Circuit(3), state)
    np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-15)


def test_double_hadamard():
    out = run_circuit(Circuit(1).h(0).h(0), zero_state(1))
    np.testing.assert_allclose(out.amplitudes, [1, 0], atol=1e-12)


def test_run_circuit_qubit_mismatch():
    with pytest.raises(DimensionError):
        run_circuit(Circuit(2).h(0), zero_state(3))


def test_circuit_rejects_out_of_range_gate():
    with pytest.raises(QubitIndexError):
        Circuit(2).cnot(0, 2)


def test_bell_state():
    out = run_circuit(Circuit(2).h(0).cnot(0, 1))
    np.testing.assert_allclose(out.amplitudes, [SQRT2_INV, 0, 0, SQRT2_INV], atol=1e-12)


def test_norm_preserved_on_random_circuits():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        n = int(rng.integers(1, 7))
        circuit = Circuit(n)
        for _ in range(int(rng.integers(0, 21))):
            kinds = [k for k in ALL_KINDS if k.arity <= n]
            kind = kinds[int(rng.integers(len(kinds)))]
            targets = tuple(int(t) for t in rng.choice(n, size=kind.arity, replace=False))
            circuit.add(make_gate(kind, targets, rng))
        out = run_circuit(circuit, StateVector(n, random_state(rng, n)))
        assert abs(out.norm() - 1) < 1e-10


def test_circuit_inverse_undoes_circuit(rng):
    circuit = Circuit(3).h(0).ry(0.4, 1).cnot(0, 2).cp(1.1, 2, 1).rz(-0.7, 0).p(2.5, 2).y(1)
    start = StateVector(3, random_state(rng, 3))
    out = run_circuit(circuit + circuit.inverse(), start)
    np.testing.assert_allclose(out.amplitudes, start.amplitudes, atol=1e-12)


def test_circuit_concat_mismatch():
    with pytest.raises(DimensionError):
        Circuit(2) + Circuit(3)


# =============================================================================
# Inner products and probabilities
# =============================================================================

def test_inner_product_self(rng):
    psi = StateVector(2, random_state(rng, 2))
    assert inner_product(psi, psi) == pytest.approx(1, abs=1e-12)


def test_inner_product_orthogonal():
    assert inner_product(basis_state(1, 0), basis_state(1, 1)) == 0


def test_inner_product_hadamard_column():
    plus = apply_gate(zero_state(1), Gate(GateKind.H, (0,)))
    assert inner_product(zero_state(1), plus) == pytest.approx(SQRT2_INV, abs=1e-12)


def test_inner_product_dimension_mismatch():
    with pytest.raises(DimensionError):
        inner_product(zero_state(1), zero_state(2))


def test_probabilities_examples():
    np.testing.assert_allclose(measure_probabilities(zero_state(1)), [1, 0])
    plus = apply_gate(zero_state(1), Gate(GateKind.H, (0,)))
    np.testing.assert_allclose(measure_probabilities(plus), [0.5, 0.5], atol=1e-12)
    psi = StateVector(1, [0.6, 0.8])
    np.testing.assert_allclose(measure_probabilities(psi), [0.36, 0.64], atol=1e-12)


def test_marginal_probabilities_order():
    # |01>: qubit 0 is 0, qubit 1 is 1
    state = basis_state(2, 1)
    np.testing.assert_allclose(marginal_probabilities(state, [1]), [0, 1])
    np.testing.assert_allclose(marginal_probabilities(state, [1, 0]), [0, 0, 1, 0])


# =============================================================================
# Sampling
# =============================================================================

def test_sample_deterministic_outcome():
    counts = sample(zero_state(1), 100, seed=5)
    assert counts.counts == {"0": 100}


def test_sample_hadamard_binomial_bound():
    plus = apply_gate(zero_state(1), Gate(GateKind.H, (0,)))
    counts = sample(plus, 10_000, seed=7)
    assert abs(counts.get("0") - 5000) <= 3 * sqrt(10_000 * 0.25)
    assert sum(counts.counts.values()) == 10_000


def test_sample_same_seed_same_counts(rng):
    psi = StateVector(3, random_state(rng, 3))
    assert sample(psi, 500, seed=9).counts == sample(psi, 500, seed=9).counts


@pytest.mark.parametrize("shots", [0, -3, 2.5])
def test_sample_rejects_bad_shots(shots):
    with pytest.raises(ArgumentError):
        sample(zero_state(1), shots, seed=0)


@pytest.mark.parametrize("shots", [10**2, 10**4, pytest.param(10**6, marks=pytest.mark.slow)])
def test_sampling_converges(shots):
    state = run_circuit(Circuit(2).ry(1.1, 0).cnot(0, 1).ry(0.4, 1))
    freqs = sample(state, shots, seed=2).frequencies()
    assert total_variation(freqs, measure_probabilities(state)) <= 5 / sqrt(shots)
