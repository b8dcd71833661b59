"""
svm/kernels.py

Kernel specifications for every family the classifier supports, and Gram /
cross-kernel computation dispatched on the kind.
"""

from dataclasses import dataclass
from enum import Enum
import numbers

import numpy as np

from qkernel.encoding import FeatureMapConfig
from qkernel.errors import ConfigurationError, DimensionError
from qkernel.kernel import (
    DEFAULT_SHOTS,
    KernelEstimator,
    KernelMatrix,
    KernelMode,
    cross_kernel,
    gram_matrix,
)


class KernelKind(str, Enum):
    LINEAR = "linear"
    POLYNOMIAL = "polynomial"
    RBF = "rbf"
    QUANTUM = "quantum"
    PRECOMPUTED = "precomputed"


CLASSICAL_KINDS = (KernelKind.LINEAR, KernelKind.POLYNOMIAL, KernelKind.RBF)


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind = KernelKind.LINEAR
    degree: int = 3
    coef0: float = 1.0
    gamma: float = 1.0
    feature_map: FeatureMapConfig = None
    mode: KernelMode = KernelMode.EXACT
    shots: int = DEFAULT_SHOTS
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", KernelKind(self.kind))
            object.__setattr__(self, "mode", KernelMode(self.mode))
        except ValueError as exc:
            raise ConfigurationError(str(exc)) from None
        if not isinstance(self.degree, numbers.Integral) or self.degree < 1:
            raise ConfigurationError(f"polynomial degree must be >= 1, got {self.degree!r}")
        if not self.gamma > 0:
            raise ConfigurationError(f"rbf gamma must be > 0, got {self.gamma!r}")
        if self.kind is KernelKind.QUANTUM:
            if self.feature_map is None:
                raise ConfigurationError("quantum kernel needs a feature map")
            # validates shots/seed for the chosen mode
            self.estimator()

    def estimator(self):
        return KernelEstimator(self.feature_map, self.mode, self.shots, self.seed)

    def to_dict(self):
        d = {"kind": self.kind.value}
        if self.kind is KernelKind.POLYNOMIAL:
            d.update(degree=self.degree, coef0=self.coef0)
        elif self.kind is KernelKind.RBF:
            d.update(gamma=self.gamma)
        elif self.kind is KernelKind.QUANTUM:
            d.update(
                feature_map=self.feature_map.to_dict(),
                mode=self.mode.value,
                shots=self.shots,
                seed=self.seed,
            )
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if d.get("feature_map") is not None:
            d["feature_map"] = FeatureMapConfig.from_dict(d["feature_map"])
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigurationError(f"Bad kernel spec {d}: {exc}") from None

    def describe(self):
        if self.kind is KernelKind.POLYNOMIAL:
            return f"polynomial(degree={self.degree}, coef0={self.coef0:g})"
        if self.kind is KernelKind.RBF:
            return f"rbf(gamma={self.gamma:g})"
        if self.kind is KernelKind.QUANTUM:
            fm = self.feature_map
            return f"quantum({self.mode.value}, qubits={fm.n_qubits}, depth={fm.depth}, {fm.entanglement.value})"
        return self.kind.value


def _require_classical(spec):
    if spec.kind not in CLASSICAL_KINDS:
        raise ConfigurationError(
            f"{spec.kind.value} kernels are not evaluated classically; use the quantum kernel module"
        )


def classical_kernel(spec, x, y):
    _require_classical(spec)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise DimensionError(f"Kernel arguments have shapes {x.shape} and {y.shape}")
    if spec.kind is KernelKind.LINEAR:
        return float(x @ y)
    if spec.kind is KernelKind.POLYNOMIAL:
        return float((x @ y + spec.coef0) ** spec.degree)
    return float(np.exp(-spec.gamma * np.sum((x - y) ** 2)))


def classical_gram(spec, A, B):
    _require_classical(spec)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"Feature widths differ: {A.shape[1]} vs {B.shape[1]}")
    dots = A @ B.T
    if spec.kind is KernelKind.LINEAR:
        return dots
    if spec.kind is KernelKind.POLYNOMIAL:
        return (dots + spec.coef0) ** spec.degree
    sq = np.sum(A**2, axis=1)[:, None] + np.sum(B**2, axis=1)[None, :] - 2 * dots
    return np.exp(-spec.gamma * np.clip(sq, 0.0, None))


def compute_gram(spec, X, n_jobs=1):
    if spec.kind is KernelKind.QUANTUM:
        return gram_matrix(X, spec.estimator(), n_jobs=n_jobs)
    if spec.kind is KernelKind.PRECOMPUTED:
        raise ConfigurationError("precomputed kernels have no feature-space Gram to compute")
    K = classical_gram(spec, X, X)
    return KernelMatrix(0.5 * (K + K.T))


def compute_cross(spec, X_new, X_train, n_jobs=1):
    if spec.kind is KernelKind.QUANTUM:
        return cross_kernel(X_new, X_train, spec.estimator(), n_jobs=n_jobs)
    if spec.kind is KernelKind.PRECOMPUTED:
        raise ConfigurationError("precomputed kernels need a caller-supplied cross-kernel")
    return classical_gram(spec, X_new, X_train)
