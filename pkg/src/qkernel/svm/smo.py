"""
svm/smo.py

Sequential minimal optimization of the soft-margin SVM dual

    maximize  W(a) = sum(a) - 1/2 sum_ij a_i a_j y_i y_j K_ij
    s.t.      0 <= a_i <= C,  sum(a_i y_i) = 0

Simplified SMO: every KKT-violating first index is paired with second indices
drawn in a seeded random order until one pair makes progress. Pair directions
with non-negative curvature (duplicate points, slightly indefinite sampled Gram
matrices) are resolved by evaluating the objective at both ends of the segment.
"""

from dataclasses import dataclass

from loguru import logger
import numpy as np

from qkernel.errors import ArgumentError, ConfigurationError, DegenerateDataError, DimensionError, InvariantError
from qkernel.kernel import KernelMatrix

DEFAULT_C = 1.0
DEFAULT_TOL = 1e-3
DEFAULT_MAX_PASSES = 10
EQUALITY_TOL = 1e-8
_STEP_EPS = 1e-12


@dataclass(frozen=True)
class TrainConfig:
    C: float = DEFAULT_C
    tol: float = DEFAULT_TOL
    max_passes: int = DEFAULT_MAX_PASSES
    seed: int = 0
    # a sweep counts as "changed" when some alpha moves by more than this; tol / 100 when unset
    alpha_eps: float = None
    max_sweeps: int = 10_000

    def __post_init__(self):
        if not self.C > 0:
            raise ConfigurationError(f"C must be > 0, got {self.C!r}")
        if not self.tol > 0:
            raise ConfigurationError(f"tol must be > 0, got {self.tol!r}")
        if int(self.max_passes) != self.max_passes or self.max_passes < 1:
            raise ConfigurationError(f"max_passes must be a positive integer, got {self.max_passes!r}")
        if self.seed < 0:
            raise ConfigurationError(f"seed must be non-negative, got {self.seed!r}")
        if self.alpha_eps is None:
            object.__setattr__(self, "alpha_eps", self.tol * 1e-2)


def as_gram(K):
    entries = K.entries if isinstance(K, KernelMatrix) else np.asarray(K, dtype=float)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise DimensionError(f"Kernel matrix must be square, got shape {entries.shape}")
    return entries


def check_labels(y, n=None):
    y = np.asarray(y)
    if y.ndim != 1:
        raise DimensionError(f"Labels must be a vector, got shape {y.shape}")
    if n is not None and y.shape[0] != n:
        raise DimensionError(f"{y.shape[0]} labels for a {n}x{n} kernel matrix")
    if not np.all(np.isin(y, (-1, 1))):
        raise ArgumentError("Labels must be -1 or +1")
    return y.astype(int)


def dual_objective(K, y, alphas):
    K = as_gram(K)
    y = check_labels(y, K.shape[0])
    alphas = np.asarray(alphas, dtype=float)
    if alphas.shape != y.shape:
        raise DimensionError(f"{alphas.shape[0]} alphas for {y.shape[0]} labels")
    ay = alphas * y
    return float(alphas.sum() - 0.5 * ay @ K @ ay)


def _snap(a, C):
    a = min(max(a, 0.0), C)
    if a < _STEP_EPS * C:
        return 0.0
    if a > C * (1 - _STEP_EPS):
        return C
    return a


def _pair_step(i, j, alphas, g, b, y, K, C):
    """
    Optimize the (i, j) pair along the equality constraint. Returns the new
    (a_i, a_j, b) or None when the pair cannot make progress.
    """
    a_i, a_j = alphas[i], alphas[j]
    E_i = g[i] + b - y[i]
    E_j = g[j] + b - y[j]
    if y[i] != y[j]:
        L, H = max(0.0, a_j - a_i), min(C, C + a_j - a_i)
    else:
        L, H = max(0.0, a_i + a_j - C), min(C, a_i + a_j)
    if H - L < _STEP_EPS:
        return None

    eta = 2 * K[i, j] - K[i, i] - K[j, j]
    G = y[j] * (E_i - E_j)
    if eta < 0:
        new_j = min(max(a_j - G / eta, L), H)
    else:
        def gain(t):
            return (t - a_j) * G + 0.5 * eta * (t - a_j) ** 2

        gain_L, gain_H = gain(L), gain(H)
        if max(gain_L, gain_H) <= _STEP_EPS:
            return None
        new_j = L if gain_L > gain_H else H

    new_j = _snap(new_j, C)
    if abs(new_j - a_j) < _STEP_EPS:
        return None
    new_i = _snap(a_i + y[i] * y[j] * (a_j - new_j), C)

    d_i, d_j = y[i] * (new_i - a_i), y[j] * (new_j - a_j)
    b1 = b - E_i - d_i * K[i, i] - d_j * K[i, j]
    b2 = b - E_j - d_i * K[i, j] - d_j * K[j, j]
    if 0 < new_i < C:
        b = b1
    elif 0 < new_j < C:
        b = b2
    else:
        b = 0.5 * (b1 + b2)
    return new_i, new_j, b


def compute_bias(alphas, y, g, C):
    """
    Mean of y_i - g_i over free support vectors (0 < a_i < C). Without free
    vectors, the midpoint of the interval the bounded points allow.
    """
    free = (alphas > 0) & (alphas < C)
    if np.any(free):
        return float(np.mean(y[free] - g[free]))

    r = y - g
    at_zero, at_c = alphas <= 0, alphas >= C
    lower = np.concatenate([r[at_zero & (y > 0)], r[at_c & (y < 0)]])
    upper = np.concatenate([r[at_zero & (y < 0)], r[at_c & (y > 0)]])
    lo = lower.max() if lower.size else None
    hi = upper.min() if upper.size else None
    if lo is None and hi is None:
        return 0.0
    if lo is None:
        return float(hi)
    if hi is None:
        return float(lo)
    return float(0.5 * (lo + hi))


def train_smo(K, y, cfg=None):
    """
    Train on a precomputed kernel matrix. Returns an SVMModel whose kernel is
    ``precomputed`` and which stores no training points.
    """
    from qkernel.svm.model import SVMModel
    from qkernel.svm.kernels import KernelKind, KernelSpec

    cfg = cfg or TrainConfig()
    K = as_gram(K)
    n = K.shape[0]
    y = check_labels(y, n)
    if n < 2:
        raise DimensionError(f"Training needs at least 2 points, got {n}")
    if not (np.any(y > 0) and np.any(y < 0)):
        raise DegenerateDataError(f"Training labels contain a single class ({int(y[0]):+d})")

    C, tol = float(cfg.C), cfg.tol
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    alphas = np.zeros(n)
    g = np.zeros(n)  # g = K @ (alphas * y), the decision value without bias
    b = 0.0
    passes = sweeps = 0

    while passes < cfg.max_passes and sweeps < cfg.max_sweeps:
        sweeps += 1
        changed = 0
        for i in range(n):
            r_i = y[i] * (g[i] + b - y[i])
            if not ((r_i < -tol and alphas[i] < C) or (r_i > tol and alphas[i] > 0)):
                continue
            for j in rng.permutation(n):
                if j == i:
                    continue
                step = _pair_step(i, j, alphas, g, b, y, K, C)
                if step is None:
                    continue
                new_i, new_j, b = step
                g += K[:, i] * (y[i] * (new_i - alphas[i])) + K[:, j] * (y[j] * (new_j - alphas[j]))
                if abs(new_j - alphas[j]) > cfg.alpha_eps:
                    changed += 1
                alphas[i], alphas[j] = new_i, new_j
                break
        passes = passes + 1 if changed == 0 else 0

    if passes < cfg.max_passes:
        logger.warning(f"SMO stopped after {sweeps} sweeps without {cfg.max_passes} quiet passes")
    else:
        logger.debug(f"SMO converged after {sweeps} sweeps")

    residual = float(abs(alphas @ y))
    if residual > EQUALITY_TOL:
        raise InvariantError(f"Equality constraint violated: |sum(alpha*y)| = {residual:.3g}")

    bias = compute_bias(alphas, y, g, C)
    return SVMModel(
        alphas=alphas,
        bias=bias,
        labels=y,
        support_indices=np.flatnonzero(alphas > 0),
        kernel=KernelSpec(KernelKind.PRECOMPUTED),
        C=C,
    )
