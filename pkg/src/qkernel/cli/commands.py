"""
cli/commands.py

One function per CLI command. Each takes a resolved RunConfig, writes the
artifacts named by its flags, prints a summary table to stdout and returns the
process exit code.
"""

from dataclasses import replace
import json
from pathlib import Path
import time

from loguru import logger
import numpy as np
import pandas as pd

from qkernel.cli.plot import plot_decision_svg
from qkernel.data import (
    PreprocessModel,
    apply_pipeline,
    fit_pipeline,
    generate_adhoc,
    load_csv,
    save_csv,
    train_test_split,
)
from qkernel.errors import ConfigurationError, InputError, ParseError
from qkernel.svm import (
    KernelKind,
    compute_gram,
    decision_values,
    dual_objective,
    fit,
    load_model,
    predict,
    save_model,
    sign_labels,
)

REPORT_VERSION = 1
COMPARE_KINDS = (KernelKind.QUANTUM, KernelKind.LINEAR, KernelKind.POLYNOMIAL, KernelKind.RBF)


def _require(cfg, field):
    value = getattr(cfg, field)
    if value is None:
        raise ConfigurationError(f"--{field.replace('_', '-')} is required")
    return value


def _load_labelled(cfg, path):
    # single-class files load so training can report them as degenerate data
    return load_csv(path, cfg.label_col, cfg.positive_label, require_both=False)


def _load_any(cfg, path):
    return load_csv(path, cfg.label_col, cfg.positive_label, require_both=False, label_optional=True)


def _print_table(df):
    print(df.to_string(index=False))


def _write_json(doc, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
    return path


def _load_preprocess(path):
    path = Path(path)
    if not path.exists():
        raise InputError(f"Preprocess file not found: {path}")
    try:
        with open(path, encoding="utf-8") as f:
            return PreprocessModel.from_dict(json.load(f))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None


def accuracy(truth, predicted):
    return float(np.mean(np.asarray(truth) == np.asarray(predicted)))


def cmd_prepare(cfg):
    """load -> stratified split -> standardize -> PCA(qubits) -> rescale."""
    data = load_csv(_require(cfg, "data"), cfg.label_col, cfg.positive_label)
    out = Path(_require(cfg, "out"))
    train, test = train_test_split(data, cfg.test_fraction, cfg.seed)
    model = fit_pipeline(train, n_components=cfg.qubits, lo=cfg.lo, hi=cfg.hi)
    train_p = apply_pipeline(model, train)
    test_p = apply_pipeline(model, test)

    save_csv(train_p, out / "train.csv")
    save_csv(test_p, out / "test.csv")
    _write_json(model.to_dict(), out / "preprocess.json")
    logger.info(f"Prepared data written to {out}")

    rows = []
    for name, part in (("train", train_p), ("test", test_p)):
        counts = part.class_counts()
        rows.append({"split": name, "rows": part.n_samples, "+1": counts[1], "-1": counts[-1], "clamped": part.n_clamped})
    _print_table(pd.DataFrame(rows))
    print(f"features: {data.n_features} -> {train_p.n_features}")
    print(f"retained variance: {model.retained_variance:.6f}")
    return 0


def cmd_train(cfg):
    data = _load_labelled(cfg, _require(cfg, "data"))
    out = _require(cfg, "out")
    spec = cfg.kernel_spec()
    model, gram = fit(spec, data.features, data.labels, cfg.train_config(), n_jobs=cfg.n_jobs)
    preprocess = _load_preprocess(cfg.preprocess) if cfg.preprocess else None
    model = replace(model, preprocess=preprocess, feature_names=data.feature_names)
    save_model(model, out)
    logger.info(f"Model written to {out}")

    _print_table(
        pd.DataFrame(
            [
                {
                    "kernel": spec.describe(),
                    "train_rows": model.n_train,
                    "support_vectors": model.n_support,
                    "dual_objective": dual_objective(gram, model.labels, model.alphas),
                    "sum_alpha_y": model.equality_residual,
                }
            ]
        )
    )
    return 0


def _maybe_preprocess(model, data):
    """Raw data that matches the width the model's preprocessing was fitted on is run through it."""
    pre = model.preprocess
    if pre is not None and pre.feature_names and data.n_features == len(pre.feature_names) != model.n_features:
        logger.info("Applying the model's preprocessing to the input data")
        return apply_pipeline(pre, data)
    return data


def cmd_predict(cfg):
    model = load_model(_require(cfg, "model"))
    data = _maybe_preprocess(model, _load_any(cfg, _require(cfg, "data")))
    out = _require(cfg, "out")
    values = decision_values(model, data.features, n_jobs=cfg.n_jobs)
    labels = sign_labels(values)

    frame = pd.DataFrame({"index": np.arange(data.n_samples), "decision_value": values, "label": labels})
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(out, index=False, float_format="%.17g", lineterminator="\n")
    logger.info(f"Predictions written to {out}")

    print(f"predicted: {data.n_samples} rows (+1: {int(np.sum(labels == 1))}, -1: {int(np.sum(labels == -1))})")
    if data.has_labels:
        correct = int(np.sum(labels == data.labels))
        print(f"accuracy: {correct / data.n_samples:.6f} ({correct}/{data.n_samples})")
    return 0


def _compare_splits(cfg):
    data = _load_labelled(cfg, _require(cfg, "data"))
    if cfg.test_data:
        return data, _load_labelled(cfg, cfg.test_data)
    return train_test_split(data, cfg.test_fraction, cfg.seed)


def run_compare(cfg, train, test):
    """Train every kernel family on the same split; one result row per kernel."""
    results = []
    for kind in COMPARE_KINDS:
        spec = cfg.kernel_spec(kind)
        tic = time.perf_counter()
        model, gram = fit(spec, train.features, train.labels, cfg.train_config(), n_jobs=cfg.n_jobs)
        seconds = time.perf_counter() - tic
        acc = accuracy(test.labels, predict(model, test.features, n_jobs=cfg.n_jobs))
        logger.debug(f"{kind.value}: accuracy={acc:.4f} sv={model.n_support} time={seconds:.2f}s")
        results.append(
            {
                "kernel": kind.value,
                "description": spec.describe(),
                "accuracy": acc,
                "support_vectors": model.n_support,
                "dual_objective": dual_objective(gram, model.labels, model.alphas),
                "train_seconds": seconds,
            }
        )
    return results


def cmd_compare(cfg):
    train, test = _compare_splits(cfg)
    out = _require(cfg, "out")
    results = run_compare(cfg, train, test)
    best_acc = max(r["accuracy"] for r in results)
    best = [r["kernel"] for r in results if r["accuracy"] == best_acc]

    report = {
        "format_version": REPORT_VERSION,
        "train_rows": train.n_samples,
        "test_rows": test.n_samples,
        "seed": cfg.seed,
        "C": cfg.c,
        "results": [
            {k: v for k, v in r.items() if k != "train_seconds" or cfg.record_timing} for r in results
        ],
        "best": best,
    }
    _write_json(report, out)
    logger.info(f"Comparison report written to {out}")

    table = pd.DataFrame(results)[["kernel", "accuracy", "support_vectors", "train_seconds"]]
    table["best"] = ["*" if k in best else "" for k in table["kernel"]]
    _print_table(table)
    return 0


def cmd_kernel(cfg):
    data = _load_any(cfg, _require(cfg, "data"))
    out = _require(cfg, "out")
    gram = compute_gram(cfg.kernel_spec(), data.features, n_jobs=cfg.n_jobs)
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    gram.to_csv(out)
    logger.info(f"Gram matrix written to {out}")

    min_eig = gram.min_eigenvalue()
    if min_eig < -1e-8:
        logger.warning(f"Gram matrix is indefinite: min eigenvalue {min_eig:.3e}")
    _print_table(
        pd.DataFrame(
            [{"n": gram.n, "mode": gram.mode.value, "symmetric": gram.is_symmetric(), "min_eigenvalue": min_eig}]
        )
    )
    return 0


def cmd_plot(cfg):
    model = load_model(_require(cfg, "model"))
    data = _maybe_preprocess(model, _load_any(cfg, _require(cfg, "data")))
    out = _require(cfg, "out")
    evaluated = plot_decision_svg(model, data, out, n_jobs=cfg.n_jobs)
    logger.info(f"Plot written to {out}")
    print(f"grid evaluations: {evaluated}")
    return 0


def cmd_adhoc_gen(cfg):
    out = Path(_require(cfg, "out"))
    train, test = generate_adhoc(
        cfg.train_per_class, cfg.test_per_class, cfg.gap, cfg.feature_map(), seed=cfg.seed, n_jobs=cfg.n_jobs
    )
    save_csv(train, out / "train.csv")
    save_csv(test, out / "test.csv")
    logger.info(f"Ad-hoc data written to {out}")

    rows = [
        {"split": name, "rows": part.n_samples, "+1": part.class_counts()[1], "-1": part.class_counts()[-1]}
        for name, part in (("train", train), ("test", test))
    ]
    _print_table(pd.DataFrame(rows))
    return 0


COMMANDS = {
    "prepare": cmd_prepare,
    "train": cmd_train,
    "predict": cmd_predict,
    "compare": cmd_compare,
    "kernel": cmd_kernel,
    "plot": cmd_plot,
    "adhoc-gen": cmd_adhoc_gen,
}
