# qkernel/data/__init__.py

from .dataset import DEFAULT_LABEL_COLUMN, Dataset, load_csv, save_csv
from .preprocess import (
    DEFAULT_LO,
    DEFAULT_HI,
    PreprocessModel,
    fit_standardize,
    apply_standardize,
    fit_pca,
    apply_pca,
    reconstruct_pca,
    fit_rescale,
    apply_rescale,
    fit_pipeline,
    apply_pipeline,
)
from .split import class_test_count, train_test_split
from .adhoc import MAX_CANDIDATES, generate_adhoc, parity_expectation, parity_observable
