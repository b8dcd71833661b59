"""
data/preprocess.py

Fitted preprocessing: standardization, PCA down to the qubit count and an affine
rescale into the encoding angle range. Every ``fit_*`` sees training rows only;
``apply_*`` reuses those statistics on any split.
"""

from dataclasses import dataclass, fields, replace
import math
import numbers

from loguru import logger
import numpy as np

from qkernel.errors import ArgumentError, ConfigurationError, DegenerateFeatureError, DimensionError

DEFAULT_LO = -math.pi
DEFAULT_HI = math.pi
_VECTOR_FIELDS = ("means", "stds", "pca_mean", "explained_variance", "mins", "maxs")


@dataclass(frozen=True, eq=False)
class PreprocessModel:
    """
    Any subset of the three stages. A stage is present when its fields are set.
    """

    feature_names: tuple = None
    means: np.ndarray = None
    stds: np.ndarray = None
    pca_mean: np.ndarray = None
    pca_components: np.ndarray = None  # k x d, orthonormal rows
    explained_variance: np.ndarray = None
    total_variance: float = None
    lo: float = None
    hi: float = None
    mins: np.ndarray = None
    maxs: np.ndarray = None

    def __post_init__(self):
        for name in _VECTOR_FIELDS:
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, np.asarray(value, dtype=float))
        if self.pca_components is not None:
            object.__setattr__(self, "pca_components", np.atleast_2d(np.asarray(self.pca_components, dtype=float)))
        if self.feature_names is not None:
            object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if self.stds is not None and not np.all(self.stds > 0):
            raise ConfigurationError("Standardization stds must be strictly positive")

    @property
    def standardizes(self):
        return self.means is not None

    @property
    def reduces(self):
        return self.pca_components is not None

    @property
    def rescales(self):
        return self.mins is not None

    @property
    def retained_variance(self):
        """Fraction of training variance kept by the PCA components."""
        if not self.reduces:
            return 1.0
        if self.total_variance <= 0:
            return 1.0
        return float(np.sum(self.explained_variance) / self.total_variance)

    def to_dict(self):
        d = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, np.ndarray):
                value = value.tolist()
            elif isinstance(value, tuple):
                value = list(value)
            d[f.name] = value
        return d

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigurationError(f"Unknown preprocess keys: {sorted(unknown)}")
        return cls(**d)


def _column_stats_guard(values, names, what):
    degenerate = np.flatnonzero(values <= 0)
    if degenerate.size:
        col = names[degenerate[0]]
        raise DegenerateFeatureError(f"Column {col!r} is constant on the training rows; cannot {what}")


def _check_width(model_width, data, stage):
    if data.n_features != model_width:
        raise DimensionError(f"{stage} was fitted on {model_width} feature(s), data has {data.n_features}")


def fit_standardize(train):
    if train.n_samples < 2:
        raise ArgumentError("Standardization needs at least 2 training rows")
    X = train.features
    means = X.mean(axis=0)
    stds = X.std(axis=0)  # population (1/N)
    _column_stats_guard(stds, train.feature_names, "standardize")
    return PreprocessModel(feature_names=train.feature_names, means=means, stds=stds)


def apply_standardize(model, data):
    _check_width(model.means.size, data, "Standardization")
    return data.with_features((data.features - model.means) / model.stds, data.feature_names)


def fit_pca(train, n_components):
    """
    Top ``n_components`` eigenvectors of the training covariance, by descending
    eigenvalue. Each component is signed so its largest-magnitude entry is positive.
    """
    d = train.n_features
    if not isinstance(n_components, numbers.Integral) or n_components < 1:
        raise ArgumentError(f"n_components must be a positive integer, got {n_components!r}")
    if n_components > d:
        raise DimensionError(f"Cannot keep {n_components} components of {d} feature(s)")

    X = train.features
    mean = X.mean(axis=0)
    cov = np.atleast_2d(np.cov(X - mean, rowvar=False, bias=True))
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals, kind="stable")[::-1][:n_components]
    components = eigvecs[:, order].T.copy()
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1

    explained = np.clip(eigvals[order], 0.0, None)
    total = float(np.clip(eigvals, 0.0, None).sum())
    logger.debug(f"PCA {d} -> {n_components} | retained variance {explained.sum() / total if total else 1.0:.4f}")
    return PreprocessModel(
        feature_names=train.feature_names,
        pca_mean=mean,
        pca_components=components,
        explained_variance=explained,
        total_variance=total,
    )


def apply_pca(model, data):
    _check_width(model.pca_components.shape[1], data, "PCA")
    projected = (data.features - model.pca_mean) @ model.pca_components.T
    names = [f"pc{i + 1}" for i in range(projected.shape[1])]
    return data.with_features(projected, names)


def reconstruct_pca(model, data):
    """Map component scores back to the original feature space."""
    return data.features @ model.pca_components + model.pca_mean


def fit_rescale(train, lo=DEFAULT_LO, hi=DEFAULT_HI):
    if not hi > lo:
        raise ArgumentError(f"Rescale range needs hi > lo, got [{lo}, {hi}]")
    mins = train.features.min(axis=0)
    maxs = train.features.max(axis=0)
    _column_stats_guard(maxs - mins, train.feature_names, "rescale")
    return PreprocessModel(feature_names=train.feature_names, lo=float(lo), hi=float(hi), mins=mins, maxs=maxs)


def apply_rescale(model, data):
    """
    Affine map of the training [min, max] onto [lo, hi]. Values outside the
    training range are clamped and counted on the returned dataset.
    """
    _check_width(model.mins.size, data, "Rescale")
    t = (data.features - model.mins) / (model.maxs - model.mins)
    outside = (t < 0) | (t > 1)
    n_clamped = int(outside.sum())
    if n_clamped:
        logger.warning(f"Clamped {n_clamped} value(s) outside the training range into [{model.lo:g}, {model.hi:g}]")
    t = np.clip(t, 0.0, 1.0)
    return data.with_features(model.lo * (1 - t) + model.hi * t, data.feature_names, n_clamped)


def fit_pipeline(train, n_components=None, lo=DEFAULT_LO, hi=DEFAULT_HI):
    """
    standardize -> PCA -> rescale, each stage fitted on the output of the
    previous one. ``n_components=None`` skips PCA.
    """
    std = fit_standardize(train)
    current = apply_standardize(std, train)
    model = std
    if n_components is not None:
        pca = fit_pca(current, n_components)
        current = apply_pca(pca, current)
        model = replace(
            model,
            pca_mean=pca.pca_mean,
            pca_components=pca.pca_components,
            explained_variance=pca.explained_variance,
            total_variance=pca.total_variance,
        )
    rescale = fit_rescale(current, lo, hi)
    return replace(model, lo=rescale.lo, hi=rescale.hi, mins=rescale.mins, maxs=rescale.maxs)


def apply_pipeline(model, data):
    if model.standardizes:
        data = apply_standardize(model, data)
    if model.reduces:
        data = apply_pca(model, data)
    if model.rescales:
        data = apply_rescale(model, data)
    return data
