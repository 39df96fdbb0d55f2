"""Command line entry point: ``balance``, ``benchmark`` and ``synth``.

Exit codes: 0 success, 2 usage/configuration error, 3 data error,
4 any other runtime failure. Diagnostics go to stderr; stdout only carries
requested output (a report when ``--out`` is not given).
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter

from . import synth
from .classifiers import CLASSIFIERS, ClassifierSpec, ForestParams
from .dataset import class_counts
from .evaluation import ExperimentConfig, run_experiment
from .exceptions import ConfigError, DataError
from .io import read_csv, render_report, write_csv
from .samplers import METHODS, SamplerSpec, balance_dataset

SEED_ENV = "GAMMA_BALANCE_SEED"

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_RUNTIME = 0, 2, 3, 4


def _seed(value):
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"{SEED_ENV}={env!r} is not an integer") from None


def _csv_list(text):
    return [t.strip() for t in text.split(",") if t.strip()]


def _add_data_args(p):
    p.add_argument("--input", required=True, help="CSV file with a header row")
    p.add_argument("--label-col", default=None, help="label column name or index (default: last)")
    p.add_argument("--positive-label", default=None, help="token of the positive/minority class")
    p.add_argument("--no-scale", action="store_true", help="disable min-max scaling")


def _add_sampler_args(p):
    p.add_argument("--alpha", type=float, default=2.0, help="gamma shape (>= 1)")
    p.add_argument("--theta", type=float, default=0.125, help="gamma scale (> 0)")
    p.add_argument("--k", type=int, default=3, help="nearest neighbours for sampling")
    p.add_argument("--seed", type=int, default=None, help=f"random seed (fallback: ${SEED_ENV}, then 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamma-balance",
        description="Gamma-distribution oversampling for imbalanced binary data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("balance", help="resample a CSV until both classes are equal")
    _add_data_args(p)
    p.add_argument("--method", choices=[m for m in METHODS if m != "none"], default="gamma")
    _add_sampler_args(p)
    p.add_argument("--output", required=True)
    p.add_argument("--provenance", default=None, help="sidecar CSV for synthetic rows")

    p = sub.add_parser("benchmark", help="cross-validated sampler/classifier comparison")
    _add_data_args(p)
    p.add_argument("--methods", type=_csv_list, default=["none", "gamma", "smote", "adasyn", "ros", "rus"])
    p.add_argument("--classifiers", type=_csv_list, default=["knn"])
    p.add_argument("--folds", type=int, default=5)
    _add_sampler_args(p)
    p.add_argument("--k-vote", type=int, default=5, help="neighbours voting in the k-NN classifier")
    p.add_argument("--n-trees", type=int, default=100)
    p.add_argument("--max-depth", type=int, default=12)
    p.add_argument("--report", choices=["markdown", "json", "csv"], default="markdown")
    p.add_argument("--out", default=None, help="report file (default: stdout)")

    p = sub.add_parser("synth", help="write the two-flank synthetic benchmark dataset")
    d = synth.SynthSpec()
    p.add_argument("--n", type=int, default=d.n_total)
    p.add_argument("--minority-frac", type=float, default=d.minority_frac)
    p.add_argument("--length", type=float, default=d.length)
    p.add_argument("--majority-noise", type=float, default=d.majority_noise)
    p.add_argument("--offset", type=float, default=d.offset)
    p.add_argument("--minority-noise", type=float, default=d.minority_noise)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output", required=True)
    return parser


def _log(msg):
    print(msg, file=sys.stderr)


def _counts(ds):
    c = Counter(ds.labels.tolist())
    tok = ds.label_tokens or ("0", "1")
    return ", ".join(f"{tok[k]}: {c[k]}" for k in sorted(c))


def cmd_balance(args):
    ds = read_csv(args.input, args.label_col, args.positive_label)
    spec = SamplerSpec(args.method, args.alpha, args.theta, args.k, _seed(args.seed))
    result = balance_dataset(ds, spec, scale=not args.no_scale)
    write_csv(result, args.output, provenance_path=args.provenance)
    _log(f"{args.method}: {_counts(ds)} -> {_counts(result.dataset)}; "
         f"{result.n_synthetic} synthetic rows written to {args.output}")


def cmd_benchmark(args):
    ds = read_csv(args.input, args.label_col, args.positive_label)
    class_counts(ds)
    for m in args.methods:
        if m not in METHODS:
            raise ConfigError(f"unknown method {m!r}; choose from {METHODS}")
    for c in args.classifiers:
        if c not in CLASSIFIERS:
            raise ConfigError(f"unknown classifier {c!r}; choose from {CLASSIFIERS}")
    forest = ForestParams(n_trees=args.n_trees, max_depth=args.max_depth)
    cfg = ExperimentConfig(
        dataset=ds,
        samplers=[SamplerSpec(m, args.alpha, args.theta, args.k) for m in args.methods],
        classifiers=[ClassifierSpec(c, k_vote=args.k_vote, forest=forest) for c in args.classifiers],
        n_folds=args.folds,
        seed=_seed(args.seed),
        scale=not args.no_scale,
        dataset_name=os.path.splitext(os.path.basename(args.input))[0],
    )
    text = render_report(run_experiment(cfg), args.report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        _log(f"report written to {args.out}")
    else:
        sys.stdout.write(text)


def cmd_synth(args):
    spec = synth.SynthSpec(
        n_total=args.n, minority_frac=args.minority_frac, length=args.length,
        majority_noise=args.majority_noise, offset=args.offset,
        minority_noise=args.minority_noise, seed=_seed(args.seed),
    )
    ds = synth.generate(spec)
    write_csv(ds, args.output)
    _log(f"synthetic data ({_counts(ds)}) written to {args.output}")


COMMANDS = {"balance": cmd_balance, "benchmark": cmd_benchmark, "synth": cmd_synth}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        COMMANDS[args.command](args)
    except ConfigError as err:
        _log(f"error: {err}")
        return EXIT_USAGE
    except (DataError, OSError) as err:
        _log(f"error: {err}")
        return EXIT_DATA
    except Exception as err:  # noqa: BLE001
        _log(f"error: {type(err).__name__}: {err}")
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
