"""
cli/main.py

Argument parsing and dispatch for the ``qkernel`` command.

Failures print one line to stderr, ``qkernel-error: <kind>: <message>``, and
return the error's exit code: 2 invalid input or configuration, 3 degenerate
data, 4 internal invariant violation.
"""

import argparse
import sys

from loguru import logger

from qkernel.cli.commands import COMMANDS
from qkernel.config import RunConfig, resolve_config
from qkernel.errors import QKernelError
from qkernel.log import configure_logging

_DEFAULTS = RunConfig()


def _common_arguments():
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    d = _DEFAULTS

    io = p.add_argument_group("files")
    io.add_argument("--data", help="input CSV")
    io.add_argument("--test-data", help="held-out CSV for compare (otherwise --data is split)")
    io.add_argument("--model", help="model JSON written by train")
    io.add_argument("--preprocess", help="preprocess JSON written by prepare, stored in the model")
    io.add_argument("--out", help="output file, or directory for prepare / adhoc-gen")
    io.add_argument("--config", help="JSON file with defaults for any of these flags")

    data = p.add_argument_group("data")
    data.add_argument("--label-col", help=f"label column name (default {d.label_col})")
    data.add_argument("--positive-label", help=f"label value mapped to +1 (default {d.positive_label})")
    data.add_argument("--test-fraction", type=float, help=f"stratified test share (default {d.test_fraction})")
    data.add_argument("--lo", type=float, help="lower end of the encoding range (default -pi)")
    data.add_argument("--hi", type=float, help="upper end of the encoding range (default pi)")
    data.add_argument("--gap", type=float, help=f"ad-hoc parity margin (default {d.gap})")
    data.add_argument("--train-per-class", type=int, help=f"ad-hoc train points per class (default {d.train_per_class})")
    data.add_argument("--test-per-class", type=int, help=f"ad-hoc test points per class (default {d.test_per_class})")

    fm = p.add_argument_group("feature map")
    fm.add_argument("--qubits", type=int, help=f"qubits, one per feature (default {d.qubits})")
    fm.add_argument("--depth", type=int, help=f"feature map repetitions (default {d.depth})")
    fm.add_argument("--entanglement", choices=["linear", "full"], help=f"(default {d.entanglement})")
    fm.add_argument("--pair-scale", choices=["product", "plain"], help=f"(default {d.pair_scale})")

    k = p.add_argument_group("kernel")
    k.add_argument("--kernel", choices=["quantum", "linear", "polynomial", "rbf"], help=f"(default {d.kernel})")
    k.add_argument("--degree", type=int, help=f"polynomial degree (default {d.degree})")
    k.add_argument("--coef0", type=float, help=f"polynomial offset (default {d.coef0:g})")
    k.add_argument("--gamma", type=float, help=f"rbf width (default {d.gamma:g})")
    k.add_argument("--mode", choices=["exact", "sampled"], help=f"quantum kernel estimation (default {d.mode})")
    k.add_argument("--shots", type=int, help=f"shots per sampled entry (default {d.shots})")
    k.add_argument("--n-jobs", type=int, help="parallel workers for kernel evaluation (default 1)")

    svm = p.add_argument_group("svm")
    svm.add_argument("--c", type=float, dest="c", help=f"box constraint C (default {d.c:g})")
    svm.add_argument("--tol", type=float, help=f"KKT tolerance (default {d.tol:g})")
    svm.add_argument("--max-passes", type=int, help=f"quiet sweeps before stopping (default {d.max_passes})")

    run = p.add_argument_group("run")
    run.add_argument("--seed", type=int, help=f"seed for splits, sampling and SMO (default {d.seed})")
    run.add_argument("--record-timing", action="store_true", help="include training times in the compare JSON")
    run.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return p


def build_parser():
    parser = argparse.ArgumentParser(prog="qkernel", description="Quantum-kernel SVM toolkit on a statevector simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_arguments()
    helps = {
        "prepare": "standardize, reduce to --qubits features and rescale a CSV",
        "train": "train an SVM on a prepared CSV",
        "predict": "predict labels with a trained model",
        "compare": "quantum kernel against linear, polynomial and rbf baselines",
        "kernel": "write the Gram matrix of a CSV",
        "plot": "SVG decision boundary of a 2-feature model",
        "adhoc-gen": "generate data separable under the feature map",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name], argument_default=argparse.SUPPRESS)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code

    flags = vars(args)
    command = flags.pop("command")
    config_path = flags.pop("config", None)
    configure_logging(flags.get("verbose", False))

    try:
        cfg = resolve_config(flags, config_path)
        configure_logging(cfg.verbose)
        return COMMANDS[command](cfg)
    except QKernelError as exc:
        print(f"qkernel-error: {exc.kind}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"qkernel-error: input: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        logger.opt(exception=exc).debug("Unexpected failure")
        print(f"qkernel-error: internal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
