"""
sim/statevector.py

Dense statevector simulation.

Amplitude ordering: basis index k has qubit 0 as its most significant bit, so
the amplitude array reshaped to ``[2] * n`` has qubit q on axis q.

Sampling uses ``numpy.random.Generator(PCG64(seed))`` and a single multinomial
draw, so counts are identical for a given seed on every platform.
"""

from dataclasses import dataclass

import numpy as np

from qkernel.errors import ArgumentError, DimensionError, InvariantError, NormalizationError
from qkernel.sim.circuit import check_capacity, check_targets

NORM_TOL = 1e-10


@dataclass(eq=False)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        check_capacity(self.n_qubits)
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (2 ** self.n_qubits,):
            raise DimensionError(
                f"{self.n_qubits} qubit(s) need {2 ** self.n_qubits} amplitudes, got shape {amps.shape}"
            )
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NormalizationError(f"Amplitudes have squared norm {norm_sq!r}, expected 1")
        self.amplitudes = amps

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize=False):
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        n_qubits = int(round(np.log2(max(amps.size, 1))))
        if amps.size < 2 or 2 ** n_qubits != amps.size:
            raise DimensionError(f"Amplitude count {amps.size} is not a power of two >= 2")
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise NormalizationError("Cannot normalize the zero vector")
            amps = amps / norm
        return cls(n_qubits, amps)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def copy(self):
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits}, amplitudes={np.array2string(self.amplitudes, precision=4)})"


@dataclass(frozen=True)
class ShotCounts:
    n_qubits: int
    shots: int
    counts: dict

    def __post_init__(self):
        if self.shots < 1:
            raise ArgumentError(f"shots must be >= 1, got {self.shots}")
        for key, value in self.counts.items():
            if len(key) != self.n_qubits or set(key) - {"0", "1"}:
                raise ArgumentError(f"{key!r} is not a {self.n_qubits}-bit bitstring")
            if value < 0:
                raise ArgumentError(f"Negative count {value} for {key!r}")
        if sum(self.counts.values()) != self.shots:
            raise InvariantError(
                f"Counts sum to {sum(self.counts.values())}, expected {self.shots} shots"
            )

    def get(self, bitstring):
        return self.counts.get(bitstring, 0)

    def frequencies(self):
        """Empirical distribution as a vector over all 2^n basis states."""
        freqs = np.zeros(2 ** self.n_qubits)
        for key, value in self.counts.items():
            freqs[int(key, 2)] = value / self.shots
        return freqs


def zero_state(n_qubits):
    check_capacity(n_qubits)
    amps = np.zeros(2 ** n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def _apply(amps, gate, n_qubits):
    """Contract the gate into the qubit axes of a flat amplitude array."""
    psi = amps.reshape([2] * n_qubits)
    targets = list(gate.targets)
    k = len(targets)
    matrix = gate.matrix().reshape([2] * (2 * k))
    out = np.tensordot(matrix, psi, axes=(list(range(k, 2 * k)), targets))
    return np.moveaxis(out, list(range(k)), targets).reshape(-1)


def apply_gate(state, gate):
    check_targets(gate, state.n_qubits)
    return StateVector(state.n_qubits, _apply(state.amplitudes, gate, state.n_qubits))


def run_circuit(circuit, initial=None):
    """
    Apply the circuit's gates in order. Starts from |0...0> when no initial state is given.
    """
    if initial is None:
        initial = zero_state(circuit.n_qubits)
    if initial.n_qubits != circuit.n_qubits:
        raise DimensionError(
            f"Circuit acts on {circuit.n_qubits} qubit(s), initial state has {initial.n_qubits}"
        )
    amps = initial.amplitudes
    for gate in circuit:
        amps = _apply(amps, gate, circuit.n_qubits)
    norm_sq = float(np.vdot(amps, amps).real)
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise InvariantError(f"Statevector norm drifted to {norm_sq!r}")
    return StateVector(circuit.n_qubits, amps)


def inner_product(a, b):
    """<a|b> = sum(conj(a_k) * b_k)."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"Inner product of {a.n_qubits}- and {b.n_qubits}-qubit states")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def measure_probabilities(state):
    return np.abs(state.amplitudes) ** 2


def marginal_probabilities(state, qubits):
    """Outcome distribution of the listed qubits, in the order listed."""
    qubits = list(qubits)
    for q in qubits:
        if not 0 <= q < state.n_qubits:
            raise DimensionError(f"Qubit {q} outside {state.n_qubits}-qubit state")
    probs = measure_probabilities(state).reshape([2] * state.n_qubits)
    others = tuple(q for q in range(state.n_qubits) if q not in qubits)
    marginal = probs.sum(axis=others) if others else probs
    order = [sorted(qubits).index(q) for q in qubits]
    return np.transpose(marginal, order).reshape(-1)


def qubit_fidelity(state, qubit, target):
    """
    Fidelity <t|rho|t> between the reduced state rho of one qubit and the
    single-qubit pure state with amplitudes ``target``.
    """
    target = np.asarray(target, dtype=np.complex128)
    psi = np.moveaxis(state.amplitudes.reshape([2] * state.n_qubits), qubit, -1).reshape(-1, 2)
    rho = psi.T @ psi.conj()
    return float(np.real(target.conj() @ rho @ target))


def sample(state, shots, seed=0):
    """
    Draw ``shots`` measurement outcomes of all qubits. Bitstrings are written
    qubit 0 first.
    """
    if isinstance(shots, bool) or int(shots) != shots or shots < 1:
        raise ArgumentError(f"shots must be a positive integer, got {shots!r}")
    shots = int(shots)
    if isinstance(seed, bool) or int(seed) != seed or seed < 0:
        raise ArgumentError(f"seed must be a non-negative integer, got {seed!r}")
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    probs = measure_probabilities(state)
    probs = probs / probs.sum()
    draws = rng.multinomial(shots, probs)
    width = state.n_qubits
    counts = {format(k, f"0{width}b"): int(c) for k, c in enumerate(draws) if c}
    return ShotCounts(width, shots, counts)


def total_variation(p, q):
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())
