"""
kernel/quantum.py

Fidelity kernel k(x, y) = |<phi(x)|phi(y)>|^2 over the feature map, either exact
from statevectors or estimated from shots of the compute-uncompute circuit
U(y)^dagger U(x) |0...0>.
"""

from dataclasses import dataclass
from enum import Enum
import numbers
import time

from joblib import Parallel, delayed
from loguru import logger
import numpy as np

from qkernel.encoding import FeatureMapConfig, build_feature_circuit, encode, encode_many
from qkernel.errors import ArgumentError, ConfigurationError, DimensionError
from qkernel.sim import inner_product, run_circuit, sample, zero_state

DEFAULT_SHOTS = 1024
_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class KernelMode(str, Enum):
    EXACT = "exact"
    SAMPLED = "sampled"


@dataclass(frozen=True)
class KernelEstimator:
    feature_map: FeatureMapConfig
    mode: KernelMode = KernelMode.EXACT
    shots: int = DEFAULT_SHOTS
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "mode", KernelMode(self.mode))
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from None
        if self.mode is KernelMode.SAMPLED and (
            not isinstance(self.shots, numbers.Integral) or self.shots < 1
        ):
            raise ConfigurationError(f"sampled mode needs shots >= 1, got {self.shots!r}")
        if not isinstance(self.seed, numbers.Integral) or self.seed < 0:
            raise ConfigurationError(f"seed must be a non-negative integer, got {self.seed!r}")

    @property
    def n_qubits(self):
        return self.feature_map.n_qubits


@dataclass(eq=False)
class KernelMatrix:
    entries: np.ndarray
    mode: KernelMode = KernelMode.EXACT
    shots: int = None

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise DimensionError(f"Kernel matrix must be square, got shape {self.entries.shape}")
        self.mode = KernelMode(self.mode)

    @property
    def n(self):
        return self.entries.shape[0]

    def is_symmetric(self, tol=1e-10):
        return bool(np.max(np.abs(self.entries - self.entries.T), initial=0.0) <= tol)

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(0.5 * (self.entries + self.entries.T))[0])

    def header(self):
        shots = self.shots if self.mode is KernelMode.SAMPLED else "none"
        return f"# qkernel gram n={self.n} mode={self.mode.value} shots={shots}"

    def to_csv(self, path):
        """Row-major CSV under a one-line header comment."""
        np.savetxt(path, self.entries, fmt="%.17g", delimiter=",", header=self.header()[2:], comments="# ")

    @classmethod
    def from_csv(cls, path):
        with open(path, encoding="utf-8") as f:
            header = f.readline()
        fields = dict(tok.split("=", 1) for tok in header.split() if "=" in tok)
        entries = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
        shots = None if fields.get("shots", "none") == "none" else int(fields["shots"])
        return cls(entries, fields.get("mode", "exact"), shots)


def derive_pair_seed(seed, i, j):
    """
    seed XOR a 64-bit hash of the index pair (Cantor pairing times the golden-ratio
    constant), so every entry has its own stream regardless of evaluation order.
    """
    pair = (i + j) * (i + j + 1) // 2 + j
    return (seed ^ ((pair * _GOLDEN) & _MASK64)) & _MASK64


def _check_rows(X, config, name):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ArgumentError(f"{name} must be a non-empty list of feature vectors")
    if X.shape[1] != config.n_qubits:
        raise DimensionError(
            f"{name} rows have {X.shape[1]} feature(s), the feature map has {config.n_qubits} qubit(s)"
        )
    return X


def kernel_entry_exact(x, y, config):
    fidelity = abs(inner_product(encode(x, config), encode(y, config))) ** 2
    return min(fidelity, 1.0)


def compute_uncompute_circuit(x, y, config):
    return build_feature_circuit(x, config) + build_feature_circuit(y, config).inverse()


def kernel_entry_sampled(x, y, est, seed=None):
    """
    Fraction of ``est.shots`` runs of U(y)^dagger U(x)|0...0> that return all zeros.
    ``seed`` overrides ``est.seed`` (the Gram assembly passes per-pair seeds).
    """
    if est.mode is not KernelMode.SAMPLED:
        raise ConfigurationError("kernel_entry_sampled needs an estimator in sampled mode")
    config = est.feature_map
    circuit = compute_uncompute_circuit(x, y, config)
    state = run_circuit(circuit, zero_state(config.n_qubits))
    counts = sample(state, est.shots, est.seed if seed is None else seed)
    value = counts.get("0" * config.n_qubits) / est.shots
    return float(np.clip(value, 0.0, 1.0))


def _sampled_entry(i, j, A, B, est):
    # below the diagonal evaluate the mirrored pair, the way gram_matrix fills it
    if i > j:
        return kernel_entry_sampled(B[j], A[i], est, derive_pair_seed(est.seed, j, i))
    return kernel_entry_sampled(A[i], B[j], est, derive_pair_seed(est.seed, i, j))


def _sampled_block(pairs, A, B, est):
    return [_sampled_entry(i, j, A, B, est) for i, j in pairs]


def _sampled_entries(pairs, A, B, est, n_jobs):
    if n_jobs == 1:
        return _sampled_block(pairs, A, B, est)
    chunks = np.array_split(np.arange(len(pairs)), max(1, min(len(pairs), 4 * abs(n_jobs))))
    blocks = Parallel(n_jobs=n_jobs)(
        delayed(_sampled_block)([pairs[k] for k in chunk], A, B, est) for chunk in chunks if len(chunk)
    )
    return [v for block in blocks for v in block]


def gram_matrix(X, est, n_jobs=1):
    """
    Symmetric kernel matrix over the rows of X. Entries are computed for i <= j and
    mirrored; the diagonal is exactly 1 in exact mode.
    """
    config = est.feature_map
    X = _check_rows(X, config, "X")
    n = X.shape[0]
    logger.debug(f"Computing Gram {n}x{n} | mode={est.mode.value} | jobs={n_jobs}")
    tic = time.perf_counter()

    if est.mode is KernelMode.EXACT:
        states = encode_many(X, config, n_jobs=n_jobs)
        entries = np.abs(states.conj() @ states.T) ** 2
        entries = np.clip(0.5 * (entries + entries.T), 0.0, 1.0)
        np.fill_diagonal(entries, 1.0)
    else:
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
        values = _sampled_entries(pairs, X, X, est, n_jobs)
        entries = np.zeros((n, n))
        for (i, j), v in zip(pairs, values):
            entries[i, j] = entries[j, i] = v

    logger.debug(f"Gram done in {time.perf_counter() - tic:.2f}s")
    return KernelMatrix(entries, est.mode, est.shots if est.mode is KernelMode.SAMPLED else None)


def cross_kernel(X_test, X_train, est, n_jobs=1):
    """Rectangular matrix with entry (i, j) = k(X_test[i], X_train[j])."""
    config = est.feature_map
    A = _check_rows(X_test, config, "X_test")
    B = _check_rows(X_train, config, "X_train")

    if est.mode is KernelMode.EXACT:
        sa = encode_many(A, config, n_jobs=n_jobs)
        sb = encode_many(B, config, n_jobs=n_jobs)
        return np.clip(np.abs(sa.conj() @ sb.T) ** 2, 0.0, 1.0)

    pairs = [(i, j) for i in range(A.shape[0]) for j in range(B.shape[0])]
    values = _sampled_entries(pairs, A, B, est, n_jobs)
    return np.array(values, dtype=float).reshape(A.shape[0], B.shape[0])
