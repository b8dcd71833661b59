"""
data/dataset.py

Dense labelled datasets and their CSV form: a header row, numeric feature
columns and one label column.
"""

from dataclasses import dataclass
from pathlib import Path

from loguru import logger
import numpy as np
import pandas as pd

from qkernel.errors import ArgumentError, DimensionError, InputError, LabelCardinalityError, ParseError

DEFAULT_LABEL_COLUMN = "label"
FLOAT_FORMAT = "%.17g"


@dataclass(frozen=True, eq=False)
class Dataset:
    features: np.ndarray
    labels: np.ndarray = None
    feature_names: tuple = None
    # test values clamped into the encoding range by the last rescale
    n_clamped: int = 0

    def __post_init__(self):
        features = np.asarray(self.features, dtype=float)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2:
            raise DimensionError(f"Features must be a matrix, got shape {features.shape}")
        if not np.all(np.isfinite(features)):
            raise ArgumentError("Features contain non-finite values")
        object.__setattr__(self, "features", features)

        if self.labels is not None:
            labels = np.asarray(self.labels, dtype=int)
            if labels.shape != (features.shape[0],):
                raise DimensionError(f"{labels.size} labels for {features.shape[0]} rows")
            if not np.all(np.isin(labels, (-1, 1))):
                raise ArgumentError("Labels must be -1 or +1")
            object.__setattr__(self, "labels", labels)

        names = self.feature_names
        if names is None:
            names = [f"x{i}" for i in range(features.shape[1])]
        if len(names) != features.shape[1]:
            raise DimensionError(f"{len(names)} feature names for {features.shape[1]} columns")
        object.__setattr__(self, "feature_names", tuple(str(n) for n in names))

    @property
    def n_samples(self):
        return self.features.shape[0]

    @property
    def n_features(self):
        return self.features.shape[1]

    @property
    def has_labels(self):
        return self.labels is not None

    def class_counts(self):
        if self.labels is None:
            return {}
        return {1: int(np.sum(self.labels == 1)), -1: int(np.sum(self.labels == -1))}

    def subset(self, indices):
        indices = np.asarray(indices, dtype=int)
        labels = None if self.labels is None else self.labels[indices]
        return Dataset(self.features[indices], labels, self.feature_names)

    def with_features(self, features, feature_names=None, n_clamped=0):
        return Dataset(features, self.labels, feature_names, n_clamped)

    def to_frame(self, label_column=DEFAULT_LABEL_COLUMN):
        df = pd.DataFrame(self.features, columns=list(self.feature_names))
        if self.labels is not None:
            df[label_column] = self.labels
        return df


def _resolve_label_column(columns, label_column):
    if isinstance(label_column, int):
        if not -len(columns) <= label_column < len(columns):
            raise InputError(f"Label column index {label_column} is out of range for {len(columns)} columns")
        return columns[label_column]
    if label_column not in columns:
        raise InputError(f"Label column {label_column!r} not found; columns are {list(columns)}")
    return label_column


def _map_labels(raw, positive_label, require_both):
    values = sorted(set(raw))
    if len(values) > 2:
        raise LabelCardinalityError(f"Label column has {len(values)} distinct values {values}; expected 2")
    if require_both and len(values) < 2:
        raise LabelCardinalityError(f"Label column has a single value {values}; expected 2")
    if len(values) == 2 and positive_label not in values:
        raise LabelCardinalityError(f"Positive label {positive_label!r} is not one of {values}")
    return np.where(np.asarray(raw) == positive_label, 1, -1)


def load_csv(path, label_column=DEFAULT_LABEL_COLUMN, positive_label="1", require_both=True, label_optional=False):
    """
    Load a CSV with a header row. ``label_column`` is a name or an index, or
    None for unlabelled data. ``positive_label`` maps to +1 and the other label
    value to -1. With ``label_optional`` a missing label column yields an
    unlabelled dataset instead of an error.
    """
    path = Path(path)
    if not path.exists():
        raise InputError(f"Data file not found: {path}")
    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise ParseError(f"{path}: file is empty") from None
    except pd.errors.ParserError as exc:
        raise ParseError(f"{path}: {exc}") from None

    columns = list(raw.columns)
    labels = None
    if label_optional and isinstance(label_column, str) and label_column not in columns:
        label_column = None
    if label_column is not None:
        name = _resolve_label_column(columns, label_column)
        labels = _map_labels(raw[name].str.strip().tolist(), str(positive_label), require_both)
        raw = raw.drop(columns=[name])

    if raw.shape[1] == 0:
        raise ParseError(f"{path}: no feature columns")
    if raw.shape[0] == 0:
        raise ParseError(f"{path}: no data rows")

    raw = raw.apply(lambda col: col.str.strip())
    # to_numeric only locates bad cells; astype(float) reads %.17g text back exactly
    numeric = raw.apply(pd.to_numeric, errors="coerce")
    bad = numeric.isna().to_numpy() | ~np.isfinite(numeric.to_numpy(dtype=float))
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise ParseError(
            f"{path}: row {row + 1}, column {raw.columns[col]!r}: {raw.iat[row, col]!r} is not a finite number"
        )

    logger.debug(f"Loaded {path} | rows={raw.shape[0]} | features={raw.shape[1]}")
    return Dataset(raw.astype(float).to_numpy(), labels, list(raw.columns))


def save_csv(dataset, path, label_column=DEFAULT_LABEL_COLUMN):
    """Write in the same shape ``load_csv`` reads; floats round-trip exactly."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    dataset.to_frame(label_column).to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path
