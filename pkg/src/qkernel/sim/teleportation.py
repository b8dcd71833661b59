"""
sim/teleportation.py

Three-qubit teleportation used to validate the simulator. Mid-circuit measurement
and classically controlled corrections are replaced by controlled gates
(deferred measurement), so the circuit stays unitary.
"""

import cmath
import math

from qkernel.errors import NormalizationError
from qkernel.sim.circuit import Circuit
from qkernel.sim.gates import Gate, GateKind

SOURCE, ANCILLA, DESTINATION = 0, 1, 2


def prepare_qubit_gates(alpha, beta, qubit):
    """
    Gates taking |0> on ``qubit`` to exactly alpha|0> + beta|1>, global phase included.
    """
    theta = 2 * math.atan2(abs(beta), abs(alpha))
    phase_a = cmath.phase(alpha)
    phase_b = cmath.phase(beta)
    return [
        Gate(GateKind.RY, (qubit,), theta),
        Gate(GateKind.RZ, (qubit,), -2 * phase_a),
        Gate(GateKind.P, (qubit,), phase_a + phase_b),
    ]


def build_teleportation(alpha, beta):
    alpha, beta = complex(alpha), complex(beta)
    norm_sq = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm_sq - 1.0) > 1e-10:
        raise NormalizationError(f"|alpha|^2 + |beta|^2 = {norm_sq!r}, expected 1")

    circuit = Circuit(3, prepare_qubit_gates(alpha, beta, SOURCE))
    # Bell pair between ancilla and destination
    circuit.h(ANCILLA).cnot(ANCILLA, DESTINATION)
    # Bell-basis rotation on source and ancilla
    circuit.cnot(SOURCE, ANCILLA).h(SOURCE)
    # corrections controlled on the would-be measurement results
    circuit.cnot(ANCILLA, DESTINATION).cz(SOURCE, DESTINATION)
    return circuit
