"""
data/adhoc.py

Synthetic data that is separable under the quantum feature map by construction.

Points are drawn uniformly from [0, 2pi)^n and labelled by the sign of the parity
expectation v(x) = <phi(x)| Z...Z |phi(x)> of their encoded state. Only points
with |v(x)| >= gap are kept, so a linear functional in the feature space
separates the classes with a margin.
"""

import math

from loguru import logger
import numpy as np

from qkernel.data.dataset import Dataset
from qkernel.encoding import encode_many
from qkernel.errors import ArgumentError, GenerationExhaustedError

MAX_CANDIDATES = 1_000_000
ADHOC_QUBITS = (2, 3)
_BATCH = 256


def parity_observable(n_qubits):
    """Diagonal of Z^{(x)n}: +1 on even-weight basis states, -1 on odd."""
    weights = np.array([bin(k).count("1") for k in range(2**n_qubits)])
    return np.where(weights % 2 == 0, 1.0, -1.0)


def parity_expectation(X, config, n_jobs=1):
    states = encode_many(X, config, n_jobs=n_jobs)
    return (np.abs(states) ** 2) @ parity_observable(config.n_qubits)


def generate_adhoc(n_train_per_class, n_test_per_class, gap, config, seed=0, n_jobs=1):
    """
    Returns balanced (train, test) datasets. Accepted points keep their draw
    order; the first ``n_train_per_class`` of each class go to train.
    """
    if config.n_qubits not in ADHOC_QUBITS:
        raise ArgumentError(f"Ad-hoc generation supports 2 or 3 qubits, got {config.n_qubits}")
    if config.depth < 2:
        # one layer of H plus diagonal phases leaves every basis state equally likely
        raise ArgumentError("Ad-hoc generation needs depth >= 2; the parity expectation is 0 at depth 1")
    if n_train_per_class < 1 or n_test_per_class < 1:
        raise ArgumentError("Per-class train and test counts must be positive")
    if not gap > 0:
        raise ArgumentError(f"gap must be > 0, got {gap!r}")

    need = n_train_per_class + n_test_per_class
    rng = np.random.Generator(np.random.PCG64(seed))
    accepted = {1: [], -1: []}
    drawn = 0
    while min(len(v) for v in accepted.values()) < need:
        if drawn >= MAX_CANDIDATES:
            raise GenerationExhaustedError(
                f"Only found {len(accepted[1])}/{len(accepted[-1])} points per class with |v| >= {gap} "
                f"in {MAX_CANDIDATES} candidates; try a smaller gap"
            )
        batch = rng.uniform(0.0, 2 * math.pi, size=(_BATCH, config.n_qubits))
        values = parity_expectation(batch, config, n_jobs=n_jobs)
        for k in np.flatnonzero(np.abs(values) >= gap):
            label = 1 if values[k] > 0 else -1
            if len(accepted[label]) < need:
                accepted[label].append((drawn + k, batch[k]))
        drawn += _BATCH

    logger.debug(f"Ad-hoc generation accepted {2 * need} of {drawn} candidates (gap={gap})")

    def build(part):
        rows = sorted(
            [(order, x, label) for label in (1, -1) for order, x in part(accepted[label])],
            key=lambda r: r[0],
        )
        names = [f"x{i}" for i in range(config.n_qubits)]
        return Dataset(np.array([r[1] for r in rows]), np.array([r[2] for r in rows]), names)

    train = build(lambda pts: pts[:n_train_per_class])
    test = build(lambda pts: pts[n_train_per_class:])
    return train, test
