"""
config.py

Run configuration shared by every CLI command. Values come from, in increasing
priority: the defaults below, an optional JSON config file, explicit flags.
"""

from dataclasses import asdict, dataclass, fields, replace
import json
import math
from pathlib import Path

from qkernel.encoding import FeatureMapConfig
from qkernel.errors import ConfigurationError, InputError, ParseError
from qkernel.svm import KernelKind, KernelSpec, TrainConfig

DEFAULT_SEED = 42


def _coerce(name, default, value):
    if value is None or default is None:
        return value if value is None else str(value)
    kind = type(default)
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigurationError(f"{name} must be true or false, got {value!r}")
        return value
    try:
        if kind is int and float(value) != int(value):
            raise ValueError
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{name} must be {kind.__name__}, got {value!r}") from None


@dataclass(frozen=True)
class RunConfig:
    data: str = None
    test_data: str = None
    model: str = None
    preprocess: str = None
    out: str = None
    label_col: str = "label"
    positive_label: str = "1"
    qubits: int = 2
    depth: int = 2
    entanglement: str = "linear"
    pair_scale: str = "product"
    kernel: str = "quantum"
    degree: int = 3
    coef0: float = 1.0
    gamma: float = 1.0
    mode: str = "exact"
    shots: int = 1024
    c: float = 1.0
    tol: float = 1e-3
    max_passes: int = 10
    test_fraction: float = 0.25
    seed: int = DEFAULT_SEED
    n_jobs: int = 1
    gap: float = 0.3
    train_per_class: int = 10
    test_per_class: int = 5
    lo: float = -math.pi
    hi: float = math.pi
    verbose: bool = False
    record_timing: bool = False

    def __post_init__(self):
        if self.seed < 0:
            raise ConfigurationError(f"seed must be non-negative, got {self.seed}")
        if self.n_jobs == 0:
            raise ConfigurationError("n_jobs must be non-zero (-1 uses every core)")
        object.__setattr__(self, "positive_label", str(self.positive_label))

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ConfigurationError(f"Unknown configuration key(s): {unknown}")
        return cls(**d)

    def to_dict(self):
        return asdict(self)

    def merged(self, overrides):
        """Copy with ``overrides`` (e.g. explicitly given flags) applied on top."""
        by_name = {f.name: f for f in fields(self)}
        unknown = sorted(set(overrides) - set(by_name))
        if unknown:
            raise ConfigurationError(f"Unknown configuration key(s): {unknown}")
        return replace(self, **{k: _coerce(k, by_name[k].default, v) for k, v in overrides.items()})

    def feature_map(self):
        return FeatureMapConfig(self.qubits, self.depth, self.entanglement, self.pair_scale)

    def kernel_spec(self, kind=None):
        name = kind or self.kernel
        try:
            kind = KernelKind(name)
        except ValueError:
            raise ConfigurationError(f"Unknown kernel {name!r}; choose one of linear, polynomial, rbf, quantum") from None
        if kind is KernelKind.PRECOMPUTED:
            raise ConfigurationError("The CLI computes its own Gram matrices; 'precomputed' is a library-only kernel")
        return KernelSpec(
            kind=kind,
            degree=self.degree,
            coef0=self.coef0,
            gamma=self.gamma,
            feature_map=self.feature_map() if kind is KernelKind.QUANTUM else None,
            mode=self.mode,
            shots=self.shots,
            seed=self.seed,
        )

    def train_config(self):
        return TrainConfig(C=self.c, tol=self.tol, max_passes=self.max_passes, seed=self.seed)


def load_config_file(path):
    """JSON object whose keys are the long flag names with dashes as underscores."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"Config file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{path}: config must be a JSON object")
    return {k.replace("-", "_"): v for k, v in doc.items()}


def resolve_config(flags, config_path=None):
    """Defaults <- config file <- explicit flags."""
    base = RunConfig()
    if config_path:
        base = base.merged(load_config_file(config_path))
    return base.merged(flags)
