from pathlib import Path

import numpy as np
import pytest

from qkernel.data import Dataset
from qkernel.encoding import FeatureMapConfig

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def breast_cancer_csv():
    return FIXTURES / "breast_cancer_subset.csv"


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def fm2():
    return FeatureMapConfig(n_qubits=2)


@pytest.fixture
def blobs():
    """Two well separated 2-D clusters, 8 points each."""
    g = np.random.default_rng(7)
    pos = g.normal(loc=(1.5, 1.5), scale=0.3, size=(8, 2))
    neg = g.normal(loc=(-1.5, -1.5), scale=0.3, size=(8, 2))
    X = np.vstack([pos, neg])
    y = np.array([1] * 8 + [-1] * 8)
    return Dataset(X, y, ["a", "b"])


def random_state(rng, n_qubits):
    amps = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return amps / np.linalg.norm(amps)
