# qkernel/kernel/__init__.py

from .quantum import (
    DEFAULT_SHOTS,
    KernelMode,
    KernelEstimator,
    KernelMatrix,
    derive_pair_seed,
    kernel_entry_exact,
    kernel_entry_sampled,
    compute_uncompute_circuit,
    gram_matrix,
    cross_kernel,
)
