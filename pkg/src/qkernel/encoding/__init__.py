# qkernel/encoding/__init__.py

from .feature_map import (
    DEFAULT_DEPTH,
    Entanglement,
    PairScale,
    FeatureMapConfig,
    entangled_pairs,
    expected_gate_count,
    build_feature_circuit,
    encode,
    encode_many,
)
