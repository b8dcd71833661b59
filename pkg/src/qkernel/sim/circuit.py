"""
sim/circuit.py

Ordered gate lists over a fixed register size.
"""

from dataclasses import dataclass, field
import numbers

from qkernel.errors import CapacityError, DimensionError, QubitIndexError
from qkernel.sim.gates import Gate, GateKind

MAX_QUBITS = 24


def check_capacity(n_qubits):
    if not isinstance(n_qubits, numbers.Integral) or isinstance(n_qubits, bool):
        raise CapacityError(f"n_qubits must be an integer, got {n_qubits!r}")
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise CapacityError(
            f"n_qubits={n_qubits} outside supported range 1..{MAX_QUBITS} "
            f"(2^{MAX_QUBITS} amplitudes is the memory limit)"
        )


def check_targets(gate, n_qubits):
    for t in gate.targets:
        if t >= n_qubits:
            raise QubitIndexError(
                f"{gate.kind.value} targets qubit {t} but the register has {n_qubits} qubit(s)"
            )


@dataclass
class Circuit:
    n_qubits: int
    gates: list = field(default_factory=list)

    def __post_init__(self):
        check_capacity(self.n_qubits)
        gates, self.gates = list(self.gates), []
        for gate in gates:
            self.add(gate)

    def add(self, gate):
        check_targets(gate, self.n_qubits)
        self.gates.append(gate)
        return self

    def extend(self, other):
        for gate in other:
            self.add(gate)
        return self

    def inverse(self):
        """Reversed gate list with every gate inverted, so inverse() after self is identity."""
        return Circuit(self.n_qubits, [g.inverse() for g in reversed(self.gates)])

    def h(self, q):
        return self.add(Gate(GateKind.H, (q,)))

    def x(self, q):
        return self.add(Gate(GateKind.X, (q,)))

    def y(self, q):
        return self.add(Gate(GateKind.Y, (q,)))

    def z(self, q):
        return self.add(Gate(GateKind.Z, (q,)))

    def ry(self, theta, q):
        return self.add(Gate(GateKind.RY, (q,), theta))

    def rz(self, theta, q):
        return self.add(Gate(GateKind.RZ, (q,), theta))

    def p(self, theta, q):
        return self.add(Gate(GateKind.P, (q,), theta))

    def cnot(self, control, target):
        return self.add(Gate(GateKind.CNOT, (control, target)))

    def cz(self, control, target):
        return self.add(Gate(GateKind.CZ, (control, target)))

    def cp(self, theta, control, target):
        return self.add(Gate(GateKind.CP, (control, target), theta))

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other):
        if other.n_qubits != self.n_qubits:
            raise DimensionError(
                f"Cannot concatenate a {other.n_qubits}-qubit circuit onto a {self.n_qubits}-qubit one"
            )
        return Circuit(self.n_qubits, self.gates + other.gates)
