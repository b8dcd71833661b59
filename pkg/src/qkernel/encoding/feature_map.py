"""
encoding/feature_map.py

Second-order phase-evolution feature map. Each repetition applies H to every
qubit, P(2 x_i) to qubit i, and for each entangled pair (i, j) the block
CNOT(i, j), P(2 s(x_i, x_j)) on j, CNOT(i, j).

Features are angles in radians, one feature per qubit.
"""

from dataclasses import asdict, dataclass
from enum import Enum
import math
import numbers

from joblib import Parallel, delayed
import numpy as np

from qkernel.errors import ArgumentError, ConfigurationError, DimensionError
from qkernel.sim import Circuit, run_circuit, zero_state
from qkernel.sim.circuit import MAX_QUBITS

DEFAULT_DEPTH = 2


class Entanglement(str, Enum):
    LINEAR = "linear"
    FULL = "full"


class PairScale(str, Enum):
    PRODUCT = "product"  # (pi - x_i)(pi - x_j)
    PLAIN = "plain"  # x_i * x_j

    def apply(self, xi, xj):
        if self is PairScale.PRODUCT:
            return (math.pi - xi) * (math.pi - xj)
        return xi * xj


@dataclass(frozen=True)
class FeatureMapConfig:
    n_qubits: int
    depth: int = DEFAULT_DEPTH
    entanglement: Entanglement = Entanglement.LINEAR
    pair_scale: PairScale = PairScale.PRODUCT

    def __post_init__(self):
        if not isinstance(self.n_qubits, numbers.Integral) or not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ConfigurationError(f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits!r}")
        if not isinstance(self.depth, numbers.Integral) or self.depth < 1:
            raise ConfigurationError(f"depth must be a positive integer, got {self.depth!r}")
        object.__setattr__(self, "n_qubits", int(self.n_qubits))
        object.__setattr__(self, "depth", int(self.depth))
        try:
            object.__setattr__(self, "entanglement", Entanglement(self.entanglement))
            object.__setattr__(self, "pair_scale", PairScale(self.pair_scale))
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from None

    def to_dict(self):
        d = asdict(self)
        d["entanglement"] = self.entanglement.value
        d["pair_scale"] = self.pair_scale.value
        return d

    @classmethod
    def from_dict(cls, d):
        unknown = set(d) - {"n_qubits", "depth", "entanglement", "pair_scale"}
        if unknown:
            raise ConfigurationError(f"Unknown feature map keys: {sorted(unknown)}")
        return cls(**d)


def entangled_pairs(config):
    n = config.n_qubits
    if config.entanglement is Entanglement.LINEAR:
        return [(i, i + 1) for i in range(n - 1)]
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def expected_gate_count(config):
    return config.depth * (2 * config.n_qubits + 3 * len(entangled_pairs(config)))


def _check_features(x, config):
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != config.n_qubits:
        raise DimensionError(
            f"Feature vector of shape {x.shape} does not match {config.n_qubits} qubit(s)"
        )
    if not np.all(np.isfinite(x)):
        raise ArgumentError(f"Feature vector has non-finite entries: {x.tolist()}")
    return x


def build_feature_circuit(x, config):
    x = _check_features(x, config)
    n = config.n_qubits
    pairs = entangled_pairs(config)
    circuit = Circuit(n)
    for _ in range(config.depth):
        for q in range(n):
            circuit.h(q)
        for q in range(n):
            circuit.p(2.0 * x[q], q)
        for i, j in pairs:
            circuit.cnot(i, j)
            circuit.p(2.0 * config.pair_scale.apply(x[i], x[j]), j)
            circuit.cnot(i, j)
    return circuit


def encode(x, config):
    return run_circuit(build_feature_circuit(x, config), zero_state(config.n_qubits))


def encode_many(X, config, n_jobs=1):
    """Amplitude matrix with one encoded state per row of X."""
    rows = [_check_features(x, config) for x in np.atleast_2d(np.asarray(X, dtype=float))]
    if n_jobs == 1:
        states = [encode(x, config) for x in rows]
    else:
        states = Parallel(n_jobs=n_jobs)(delayed(encode)(x, config) for x in rows)
    return np.array([s.amplitudes for s in states])
