# qkernel/svm/__init__.py

from .kernels import (
    CLASSICAL_KINDS,
    KernelKind,
    KernelSpec,
    classical_kernel,
    classical_gram,
    compute_gram,
    compute_cross,
)
from .smo import TrainConfig, train_smo, dual_objective, compute_bias
from .model import (
    SVMModel,
    decision_value,
    decision_values,
    sign_labels,
    predict,
    fit,
    kkt_residuals,
    save_model,
    load_model,
)
