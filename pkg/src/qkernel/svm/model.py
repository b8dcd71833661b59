"""
svm/model.py

Trained SVM model, decision function, prediction and JSON persistence.
"""

from dataclasses import dataclass, replace
import json
from pathlib import Path

from loguru import logger
import numpy as np

from qkernel.data.preprocess import PreprocessModel
from qkernel.errors import ConfigurationError, DimensionError, InputError, ParseError
from qkernel.svm.kernels import KernelKind, KernelSpec, compute_cross, compute_gram
from qkernel.svm.smo import TrainConfig, as_gram, train_smo

FORMAT_VERSION = 1


@dataclass(frozen=True, eq=False)
class SVMModel:
    alphas: np.ndarray
    bias: float
    labels: np.ndarray
    support_indices: np.ndarray
    kernel: KernelSpec
    train_points: np.ndarray = None
    C: float = 1.0
    preprocess: PreprocessModel = None
    feature_names: tuple = None

    def __post_init__(self):
        alphas = np.asarray(self.alphas, dtype=float)
        labels = np.asarray(self.labels, dtype=int)
        if alphas.ndim != 1 or alphas.shape != labels.shape:
            raise DimensionError(f"{alphas.size} alphas for {labels.size} labels")
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "bias", float(self.bias))
        object.__setattr__(self, "support_indices", np.asarray(self.support_indices, dtype=int))
        if self.train_points is not None:
            points = np.atleast_2d(np.asarray(self.train_points, dtype=float))
            if points.shape[0] != alphas.size:
                raise DimensionError(f"{points.shape[0]} training points for {alphas.size} alphas")
            object.__setattr__(self, "train_points", points)
        if self.feature_names is not None:
            object.__setattr__(self, "feature_names", tuple(self.feature_names))

    @property
    def n_train(self):
        return self.alphas.size

    @property
    def n_support(self):
        return self.support_indices.size

    @property
    def n_features(self):
        return None if self.train_points is None else self.train_points.shape[1]

    @property
    def equality_residual(self):
        return float(self.alphas @ self.labels)

    def to_dict(self):
        return {
            "format_version": FORMAT_VERSION,
            "alphas": self.alphas.tolist(),
            "bias": self.bias,
            "labels": self.labels.tolist(),
            "support_indices": self.support_indices.tolist(),
            "kernel": self.kernel.to_dict(),
            "train_points": None if self.train_points is None else self.train_points.tolist(),
            "C": self.C,
            "preprocess": None if self.preprocess is None else self.preprocess.to_dict(),
            "feature_names": None if self.feature_names is None else list(self.feature_names),
        }

    @classmethod
    def from_dict(cls, d):
        version = d.get("format_version")
        if version != FORMAT_VERSION:
            raise ConfigurationError(f"Unsupported model format_version {version!r}")
        try:
            return cls(
                alphas=d["alphas"],
                bias=d["bias"],
                labels=d["labels"],
                support_indices=d["support_indices"],
                kernel=KernelSpec.from_dict(d["kernel"]),
                train_points=d.get("train_points"),
                C=d.get("C", 1.0),
                preprocess=PreprocessModel.from_dict(d["preprocess"]) if d.get("preprocess") else None,
                feature_names=d.get("feature_names"),
            )
        except KeyError as exc:
            raise ConfigurationError(f"Model document is missing {exc}") from None


def decision_value(model, k_row):
    """sum_j alpha_j y_j k_row_j + bias, unclamped."""
    k_row = np.asarray(k_row, dtype=float)
    if k_row.shape != (model.n_train,):
        raise DimensionError(f"Kernel row has {k_row.size} entries, the model was trained on {model.n_train} points")
    return float((model.alphas * model.labels) @ k_row + model.bias)


def decision_values(model, X_new=None, k_cross=None, n_jobs=1):
    """
    Decision values for a batch. Either ``k_cross`` (rows = new points, columns
    = training points) is given, or it is computed from ``X_new`` and the stored
    training points.
    """
    if k_cross is None:
        if model.kernel.kind is KernelKind.PRECOMPUTED or model.train_points is None:
            raise ConfigurationError("Model has no stored training points; supply a precomputed cross-kernel")
        if X_new is None:
            raise ConfigurationError("Either X_new or k_cross is required")
        X_new = np.atleast_2d(np.asarray(X_new, dtype=float))
        if X_new.shape[1] != model.n_features:
            raise DimensionError(
                f"Data has {X_new.shape[1]} feature(s), the model was trained on {model.n_features}"
            )
        k_cross = compute_cross(model.kernel, X_new, model.train_points, n_jobs=n_jobs)
    k_cross = np.atleast_2d(np.asarray(k_cross, dtype=float))
    if k_cross.shape[1] != model.n_train:
        raise DimensionError(
            f"Cross-kernel has {k_cross.shape[1]} column(s), the model was trained on {model.n_train} points"
        )
    return k_cross @ (model.alphas * model.labels) + model.bias


def sign_labels(values):
    # sign(0) = +1
    return np.where(np.asarray(values) >= 0, 1, -1)


def predict(model, X_new=None, k_cross=None, n_jobs=1):
    return sign_labels(decision_values(model, X_new, k_cross, n_jobs))


def fit(spec, X, y, cfg=None, n_jobs=1):
    """
    Gram matrix over X for ``spec``, SMO, and a model that keeps X so it can
    predict on new points. Returns (model, gram).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    gram = compute_gram(spec, X, n_jobs=n_jobs)
    if not gram.is_symmetric(1e-10):
        logger.warning("Gram matrix is not symmetric within 1e-10")
    model = train_smo(gram, y, cfg or TrainConfig())
    return replace(model, kernel=spec, train_points=X), gram


def kkt_residuals(model, K):
    """
    Per-point violation of the KKT conditions: |y f - 1| for free vectors,
    max(0, 1 - y f) at alpha = 0 and max(0, y f - 1) at alpha = C.
    """
    K = as_gram(K)
    if K.shape[0] != model.n_train:
        raise DimensionError(f"{K.shape[0]}x{K.shape[0]} kernel for a model of {model.n_train} points")
    margins = model.labels * decision_values(model, k_cross=K)
    a, C = model.alphas, model.C
    at_zero, at_c = a <= 0, a >= C
    free = ~(at_zero | at_c)
    out = np.zeros_like(margins)
    out[free] = np.abs(margins[free] - 1)
    out[at_zero] = np.maximum(0.0, 1 - margins[at_zero])
    out[at_c] = np.maximum(0.0, margins[at_c] - 1)
    return out


def save_model(model, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model.to_dict(), f, indent=2)
    return path


def load_model(path):
    path = Path(path)
    if not path.exists():
        raise InputError(f"Model file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not a JSON model document ({exc})") from None
    return SVMModel.from_dict(doc)
