"""
errors.py

Exception hierarchy shared by every qkernel module. Each error carries a stable
machine-readable ``kind`` and the exit code the CLI returns for it.
"""


class QKernelError(Exception):
    """Base class for all qkernel errors."""

    kind = "internal"
    exit_code = 4


class InputError(QKernelError):
    """A file or column the caller named does not exist or cannot be read."""

    kind = "input"
    exit_code = 2


class ParseError(QKernelError, ValueError):
    kind = "parse"
    exit_code = 2


class ConfigurationError(QKernelError, ValueError):
    kind = "configuration"
    exit_code = 2


class DimensionError(QKernelError, ValueError):
    kind = "dimension"
    exit_code = 2


class ArgumentError(QKernelError, ValueError):
    kind = "argument"
    exit_code = 2


class CapacityError(QKernelError):
    kind = "capacity"
    exit_code = 2


class NormalizationError(QKernelError, ValueError):
    kind = "normalization"
    exit_code = 2


class LabelCardinalityError(QKernelError):
    kind = "label-cardinality"
    exit_code = 2


class GenerationExhaustedError(QKernelError):
    kind = "generation-exhausted"
    exit_code = 2


class DegenerateDataError(QKernelError):
    """Training labels do not contain both classes."""

    kind = "degenerate-data"
    exit_code = 3


class DegenerateFeatureError(QKernelError):
    """A feature column is constant on the training rows."""

    kind = "degenerate-feature"
    exit_code = 3


class StratificationError(QKernelError):
    kind = "stratification"
    exit_code = 3


class InvariantError(QKernelError):
    """An internal invariant (norm, symmetry, equality constraint) was violated."""

    kind = "invariant"
    exit_code = 4


class QubitIndexError(QKernelError, IndexError):
    """A gate names a qubit outside the register it is applied to."""

    kind = "index"
    exit_code = 2
