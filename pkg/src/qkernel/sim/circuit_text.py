"""
sim/circuit_text.py

Plain-text circuit format used by test fixtures. One gate per line:

    # qubits=3
    H 0
    CNOT 0 1
    CP 1.5707963 0 1

Parameterized kinds (RY, RZ, P, CP) put the angle in radians before the
targets. Blank lines and ``#`` comments are ignored; an optional
``# qubits=N`` line fixes the register size, otherwise it is the largest
target plus one.
"""

from pathlib import Path
import re

from qkernel.errors import InputError, ParseError, QKernelError
from qkernel.sim.circuit import Circuit
from qkernel.sim.gates import Gate, GateKind

_QUBITS_HEADER = re.compile(r"#\s*qubits\s*=\s*(\d+)\s*$")


def parse_circuit(text, n_qubits=None):
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        header = _QUBITS_HEADER.match(line)
        if header:
            if n_qubits is None:
                n_qubits = int(header.group(1))
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        gates.append(_parse_gate(line, lineno))

    if n_qubits is None:
        if not gates:
            raise ParseError("Empty circuit text needs a '# qubits=N' header")
        n_qubits = max(max(g.targets) for g in gates) + 1
    return Circuit(n_qubits, gates)


def _parse_gate(line, lineno):
    name, *args = line.split()
    try:
        kind = GateKind(name.upper())
    except ValueError:
        raise ParseError(f"line {lineno}: unknown gate {name!r}") from None
    expected = kind.arity + (1 if kind.parameterized else 0)
    if len(args) != expected:
        raise ParseError(f"line {lineno}: {kind.value} expects {expected} argument(s), got {len(args)}")
    try:
        theta = float(args[0]) if kind.parameterized else None
        targets = tuple(int(a) for a in args[1 if kind.parameterized else 0:])
        return Gate(kind, targets, theta)
    except (ValueError, QKernelError) as exc:
        raise ParseError(f"line {lineno}: {exc}") from None


def format_circuit(circuit):
    lines = [f"# qubits={circuit.n_qubits}"]
    lines += [str(gate) for gate in circuit]
    return "\n".join(lines) + "\n"


def load_circuit(path):
    path = Path(path)
    if not path.exists():
        raise InputError(f"Circuit file not found: {path}")
    return parse_circuit(path.read_text(encoding="utf-8"))
