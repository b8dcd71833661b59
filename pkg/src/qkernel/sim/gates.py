"""
sim/gates.py

The fixed gate set and its unitaries. Two-qubit kinds list the control first;
their 4x4 matrices use the (control, target) basis order |00>, |01>, |10>, |11>.
"""

from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from qkernel.errors import ArgumentError

_SQRT2_INV = 1 / math.sqrt(2)


class GateKind(str, Enum):
    H = "H"
    X = "X"
    Y = "Y"
    Z = "Z"
    RY = "RY"
    RZ = "RZ"
    P = "P"
    CNOT = "CNOT"
    CZ = "CZ"
    CP = "CP"

    @property
    def arity(self):
        return 2 if self in _TWO_QUBIT else 1

    @property
    def parameterized(self):
        return self in _PARAMETERIZED


_TWO_QUBIT = {GateKind.CNOT, GateKind.CZ, GateKind.CP}
_PARAMETERIZED = {GateKind.RY, GateKind.RZ, GateKind.P, GateKind.CP}

_FIXED_MATRICES = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.CNOT: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    GateKind.CZ: np.diag([1, 1, 1, -1]).astype(complex),
}


def _ry(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta):
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)


def _p(theta):
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=complex)


def _cp(theta):
    return np.diag([1, 1, 1, np.exp(1j * theta)]).astype(complex)


_PARAM_MATRICES = {
    GateKind.RY: _ry,
    GateKind.RZ: _rz,
    GateKind.P: _p,
    GateKind.CP: _cp,
}


@dataclass(frozen=True)
class Gate:
    """One gate application: kind, target qubits (control first) and optional angle."""

    kind: GateKind
    targets: tuple
    theta: float = None

    def __post_init__(self):
        try:
            kind = GateKind(self.kind)
        except ValueError:
            raise ArgumentError(f"Unknown gate kind {self.kind!r}") from None
        targets = tuple(int(t) for t in self.targets)
        if len(targets) != kind.arity:
            raise ArgumentError(f"{kind.value} takes {kind.arity} target(s), got {len(targets)}")
        if len(set(targets)) != len(targets):
            raise ArgumentError(f"{kind.value} targets must be distinct, got {targets}")
        if any(t < 0 for t in targets):
            raise ArgumentError(f"{kind.value} targets must be non-negative, got {targets}")
        theta = self.theta
        if kind.parameterized:
            if theta is None or not math.isfinite(theta):
                raise ArgumentError(f"{kind.value} needs a finite angle, got {theta!r}")
            theta = float(theta)
        elif theta is not None:
            raise ArgumentError(f"{kind.value} takes no angle")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "theta", theta)

    def matrix(self):
        if self.kind.parameterized:
            return _PARAM_MATRICES[self.kind](self.theta)
        return _FIXED_MATRICES[self.kind].copy()

    def inverse(self):
        if self.kind.parameterized:
            return Gate(self.kind, self.targets, -self.theta)
        # H, X, Y, Z, CNOT, CZ are self-inverse
        return self

    def __str__(self):
        args = [repr(self.theta)] if self.kind.parameterized else []
        args += [str(t) for t in self.targets]
        return " ".join([self.kind.value, *args])
