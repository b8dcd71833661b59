"""
data/split.py

Seeded stratified train/test split.
"""

import math

import numpy as np

from qkernel.errors import ArgumentError, StratificationError


def class_test_count(n_class, test_fraction):
    """round(f * n) half-up, kept in [1, n - 1] so both splits see the class."""
    return min(max(math.floor(test_fraction * n_class + 0.5), 1), n_class - 1)


def train_test_split(data, test_fraction, seed=0):
    """
    Returns (train, test). Each class is shuffled with its own draw from one
    PCG64 stream and contributes ``class_test_count`` rows to the test split.
    Row order inside each split follows the input order.
    """
    if not 0 < test_fraction < 1:
        raise ArgumentError(f"test_fraction must lie in (0, 1), got {test_fraction!r}")
    if data.labels is None:
        raise ArgumentError("Cannot stratify a dataset without labels")

    rng = np.random.Generator(np.random.PCG64(seed))
    test_idx = []
    for label in (1, -1):
        members = np.flatnonzero(data.labels == label)
        if members.size < 2:
            raise StratificationError(
                f"Class {label:+d} has {members.size} sample(s); stratified splitting needs at least 2"
            )
        n_test = class_test_count(members.size, test_fraction)
        test_idx.extend(rng.permutation(members)[:n_test].tolist())

    test_idx = np.sort(np.asarray(test_idx, dtype=int))
    train_idx = np.setdiff1d(np.arange(data.n_samples), test_idx)
    return data.subset(train_idx), data.subset(test_idx)
