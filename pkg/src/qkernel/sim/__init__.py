# qkernel/sim/__init__.py

from .gates import Gate, GateKind
from .circuit import Circuit, MAX_QUBITS, check_capacity
from .statevector import (
    StateVector,
    ShotCounts,
    zero_state,
    apply_gate,
    run_circuit,
    inner_product,
    measure_probabilities,
    marginal_probabilities,
    qubit_fidelity,
    sample,
    total_variation,
)
from .teleportation import build_teleportation, prepare_qubit_gates
from .circuit_text import parse_circuit, format_circuit, load_circuit
