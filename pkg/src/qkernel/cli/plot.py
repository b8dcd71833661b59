"""
cli/plot.py

Static SVG of a 2-feature classifier: decision regions and the zero level set
of the decision function on a 100x100 grid, with points coloured by their true
label and shaped by the predicted one.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from qkernel.errors import ArgumentError  # noqa: E402
from qkernel.svm import decision_values, sign_labels  # noqa: E402

GRID_SIZE = 100
POINT_COLORS = {1: "#d62728", -1: "#1f77b4"}
REGION_COLORS = ("#dbe7f3", "#f6dcdc")
MARKERS = {1: "o", -1: "s"}


def decision_grid(model, bounds, size=GRID_SIZE, n_jobs=1):
    """Decision values on a size x size grid over ((x_lo, x_hi), (y_lo, y_hi))."""
    (x_lo, x_hi), (y_lo, y_hi) = bounds
    xx, yy = np.meshgrid(np.linspace(x_lo, x_hi, size), np.linspace(y_lo, y_hi, size))
    values = decision_values(model, np.c_[xx.ravel(), yy.ravel()], n_jobs=n_jobs)
    return xx, yy, values.reshape(xx.shape)


def _bounds(points, pad=0.05):
    lo, hi = points.min(axis=0), points.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    return tuple(zip(lo - pad * span, hi + pad * span))


def plot_decision_svg(model, data, path, n_jobs=1):
    """Write the SVG and return the number of grid points evaluated."""
    if data.n_features != 2 or model.n_features != 2:
        raise ArgumentError(
            f"plot needs 2-feature data and model (got {data.n_features} and {model.n_features}); "
            "prepare the data with --qubits 2"
        )
    points = data.features
    reference = np.vstack([points, model.train_points])
    xx, yy, zz = decision_grid(model, _bounds(reference), n_jobs=n_jobs)
    predicted = sign_labels(decision_values(model, points, n_jobs=n_jobs))
    truth = data.labels if data.labels is not None else predicted

    plt.rcParams["svg.hashsalt"] = "qkernel"
    fig, ax = plt.subplots(figsize=(6, 5))
    ax.contourf(xx, yy, zz, levels=[zz.min() - 1, 0, zz.max() + 1], colors=REGION_COLORS)
    ax.contour(xx, yy, zz, levels=[0], colors="k", linewidths=1.2)
    for t in (1, -1):
        for p in (1, -1):
            mask = (truth == t) & (predicted == p)
            if mask.any():
                ax.scatter(
                    points[mask, 0],
                    points[mask, 1],
                    c=POINT_COLORS[t],
                    marker=MARKERS[p],
                    edgecolors="k",
                    linewidths=0.5,
                    label=f"true {t:+d} / predicted {p:+d}",
                )
    ax.set_xlabel(data.feature_names[0])
    ax.set_ylabel(data.feature_names[1])
    ax.set_title(f"Decision boundary: {model.kernel.describe()}")
    ax.legend(loc="upper right", fontsize="small")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return zz.size
