"""
Quantum kernel vs classical baselines on ad-hoc data, over a range of margins.

    python scripts/run_benchmark.py --gaps 0.1 0.3 0.5 --seeds 0 1 2 --out benchmark.csv
"""
import argparse

import pandas as pd

from qkernel.cli import run_compare
from qkernel.config import RunConfig
from qkernel.data import generate_adhoc
from qkernel.log import configure_logging


def run_benchmark(gaps, seeds, base):
    rows = []
    for gap in gaps:
        for seed in seeds:
            cfg = base.merged({"gap": gap, "seed": seed})
            train, test = generate_adhoc(
                cfg.train_per_class, cfg.test_per_class, gap, cfg.feature_map(), seed=seed, n_jobs=cfg.n_jobs
            )
            for r in run_compare(cfg, train, test):
                rows.append({"gap": gap, "seed": seed, **r})
            print(f"gap={gap} seed={seed} done.")
    return pd.DataFrame(rows)


def summarize(results):
    return (
        results.groupby(["gap", "kernel"])["accuracy"]
        .agg(["mean", "min", "max"])
        .unstack("kernel")
        .round(3)
    )


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument("--gaps", type=float, nargs="+", default=[0.1, 0.3, 0.5])
    parser.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--qubits", type=int, default=2)
    parser.add_argument("--train-per-class", type=int, default=20)
    parser.add_argument("--test-per-class", type=int, default=10)
    parser.add_argument("--c", type=float, default=10.0)
    parser.add_argument("--n-jobs", type=int, default=1)
    parser.add_argument("--out", help="CSV with one row per (gap, seed, kernel)")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args()

    configure_logging(args.verbose)
    base = RunConfig(
        qubits=args.qubits,
        train_per_class=args.train_per_class,
        test_per_class=args.test_per_class,
        c=args.c,
        n_jobs=args.n_jobs,
    )
    results = run_benchmark(args.gaps, args.seeds, base)
    if args.out:
        results.to_csv(args.out, index=False)
        print(f"Results written to {args.out}")
    print(summarize(results).to_string())
