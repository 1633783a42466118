"""Command line front end.

Four subcommands:

* ``run``      train and score both aggregation methods on one dataset
* ``bench``    sweep a manifest of datasets and ensemble sizes
* ``compare``  Bayesian signed-rank comparison over saved result files
* ``iaa``      aggregate intervals from a file and print the fuzzy set

Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .data import (
    DatasetLoadError,
    load_dataset,
    load_from_manifest,
    load_manifest,
    validate_against_manifest,
)
from .ensemble import EnsembleConfig
from .evaluation import (
    METHOD_IAA,
    METHOD_MAJORITY,
    ExperimentResult,
    bayesian_signed_rank,
    mean_differences,
    read_results,
    run_experiment,
    write_posterior_samples,
    write_results,
)
from .fuzzy import Interval, centroid, iaa_aggregate

__all__ = ["main"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through UsageError so
    # main() can map usage problems to exit code 1 instead.
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="iaabag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--n-bootstraps", type=int, nargs="+", default=[20],
                       help="ensemble size(s) n; one forest per feature-left-out "
                            "classifier times n bootstraps")
        p.add_argument("--repeats", type=int, default=30)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1,
                       help="threads across repeats; results do not depend on it")

    run = sub.add_parser("run", help="score one dataset with both methods")
    run.add_argument("--manifest", type=Path)
    run.add_argument("--dataset", help="manifest section name")
    run.add_argument("--train", type=Path, help="train CSV (instead of a manifest)")
    run.add_argument("--test", type=Path, help="test CSV (instead of a manifest)")
    run.add_argument("--main-class", help="label token of the class of interest")
    run.add_argument("--missing-token", default="?")
    add_common(run)
    run.add_argument("--out", type=Path, help="results CSV path")

    bench = sub.add_parser("bench", help="run every dataset in a manifest")
    bench.add_argument("--manifest", type=Path, required=True)
    bench.add_argument("--dataset", nargs="+", help="subset of manifest sections")
    add_common(bench)
    bench.add_argument("--out", type=Path, default=Path("results"),
                       help="directory for per-run result files")

    comp = sub.add_parser("compare", help="Bayesian signed-rank test on result files")
    comp.add_argument("results", nargs="+", type=Path)
    comp.add_argument("--metric", choices=("accuracy", "fscore"), default="accuracy")
    comp.add_argument("--rope", type=float, default=0.01)
    comp.add_argument("--mc-samples", type=int, default=50_000)
    comp.add_argument("--seed", type=int, default=0)
    comp.add_argument("--out", type=Path, help="posterior sample dump path")

    iaa = sub.add_parser("iaa", help="aggregate intervals from a file")
    iaa.add_argument("intervals", type=Path,
                     help="text file, one 'lo,hi' pair per line")
    iaa.add_argument("--out", type=Path, help="also write the printed table here")

    return parser


def _load_run_dataset(args):
    if args.manifest is not None:
        if args.dataset is None:
            raise UsageError("--dataset is required with --manifest")
        manifest = load_manifest(args.manifest)
        if args.dataset not in manifest.entries:
            raise DatasetLoadError(
                f"dataset {args.dataset!r} not in manifest "
                f"(has: {', '.join(sorted(manifest.entries))})"
            )
        train_ds, test_ds = load_from_manifest(manifest, args.dataset)
        problems = validate_against_manifest(train_ds, test_ds, manifest.entries[args.dataset])
        if problems:
            raise DatasetLoadError("; ".join(problems))
        return args.dataset, train_ds, test_ds
    if args.train is None or args.test is None or args.main_class is None:
        raise UsageError("need either --manifest/--dataset or --train/--test/--main-class")
    train_ds, test_ds = load_dataset(args.train, args.test, args.main_class,
                                     missing_token=args.missing_token)
    return args.train.stem, train_ds, test_ds


def _print_result(result: ExperimentResult) -> None:
    print(f"dataset={result.dataset_name} n_bootstraps={result.n_bootstraps} "
          f"repeats={result.repeats} seed={result.seed}")
    print(f"{'method':<14} {'accuracy':>9} {'f_score':>9}")
    for method in (METHOD_IAA, METHOD_MAJORITY):
        print(f"{method:<14} {result.mean_accuracy(method):>9.4f} "
              f"{result.mean_f_score(method):>9.4f}")


def _cmd_run(args) -> int:
    name, train_ds, test_ds = _load_run_dataset(args)
    for n in args.n_bootstraps:
        config = EnsembleConfig(n_bootstraps=n, seed=args.seed)
        result = run_experiment(train_ds, test_ds, config, repeats=args.repeats,
                                dataset_name=name, n_jobs=args.jobs)
        _print_result(result)
        out = args.out
        if out is None:
            out = Path(f"{name}_n{n}_results.csv")
        elif len(args.n_bootstraps) > 1:
            out = out.with_name(f"{out.stem}_n{n}{out.suffix}")
        write_results(out, result)
        print(f"wrote {out}")
    return 0


def _cmd_bench(args) -> int:
    manifest = load_manifest(args.manifest)
    names = args.dataset or sorted(manifest.entries)
    unknown = [n for n in names if n not in manifest.entries]
    if unknown:
        raise DatasetLoadError(f"not in manifest: {', '.join(unknown)}")

    args.out.mkdir(parents=True, exist_ok=True)
    failed = []
    summary = []
    for name in names:
        try:
            train_ds, test_ds = load_from_manifest(manifest, name)
            problems = validate_against_manifest(train_ds, test_ds, manifest.entries[name])
            if problems:
                raise DatasetLoadError("; ".join(problems))
        except (DatasetLoadError, OSError) as exc:
            print(f"iaabag: skipping {name}: {exc}", file=sys.stderr)
            failed.append(name)
            continue
        for n in args.n_bootstraps:
            config = EnsembleConfig(n_bootstraps=n, seed=args.seed)
            result = run_experiment(train_ds, test_ds, config, repeats=args.repeats,
                                    dataset_name=name, n_jobs=args.jobs)
            out = args.out / f"{name}_n{n}_results.csv"
            write_results(out, result)
            summary.append((name, n,
                            result.mean_accuracy(METHOD_IAA),
                            result.mean_accuracy(METHOD_MAJORITY),
                            result.mean_f_score(METHOD_IAA),
                            result.mean_f_score(METHOD_MAJORITY)))

    if summary:
        print(f"{'dataset':<16} {'n':>4} {'iaa_acc':>8} {'mv_acc':>8} "
              f"{'iaa_f':>8} {'mv_f':>8}")
        for name, n, ia, ma, if_, mf in summary:
            print(f"{name:<16} {n:>4} {ia:>8.4f} {ma:>8.4f} {if_:>8.4f} {mf:>8.4f}")
    if failed:
        print(f"iaabag: {len(failed)} dataset(s) failed: {', '.join(failed)}",
              file=sys.stderr)
        return 2
    return 0


def _cmd_compare(args) -> int:
    rows = read_results(args.results)
    metric = "accuracy" if args.metric == "accuracy" else "f_score"
    diffs = mean_differences(rows, metric)
    print(f"datasets: {len(diffs)} metric: {args.metric} rope: ±{args.rope}")
    for name in sorted(diffs):
        print(f"  {name:<16} diff={diffs[name]:+.4f}")
    values = np.array([diffs[name] for name in sorted(diffs)])
    rng = np.random.default_rng(np.random.SeedSequence((args.seed, 3)))
    outcome = bayesian_signed_rank(values, rope_radius=args.rope,
                                   mc_samples=args.mc_samples, rng=rng)
    print(f"p(majority_vote better) = {outcome.p_left:.4f}")
    print(f"p(rope)                 = {outcome.p_rope:.4f}")
    print(f"p(iaa better)           = {outcome.p_right:.4f}")
    if args.out is not None:
        write_posterior_samples(args.out, outcome.samples)
        print(f"wrote {args.out}")
    return 0


def _parse_interval_file(path: Path) -> list[Interval]:
    intervals = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.replace(",", " ").split()]
            if len(parts) != 2:
                raise DatasetLoadError(
                    f"{path} line {lineno}: expected 'lo,hi', got {raw.strip()!r}"
                )
            try:
                lo, hi = float(parts[0]), float(parts[1])
                intervals.append(Interval(lo, hi))
            except ValueError as exc:
                raise DatasetLoadError(f"{path} line {lineno}: {exc}") from exc
    if not intervals:
        raise DatasetLoadError(f"{path}: no intervals found")
    return intervals


def _cmd_iaa(args) -> int:
    intervals = _parse_interval_file(args.intervals)
    fs = iaa_aggregate(intervals)
    lines = ["left,right,height"]
    lines += [f"{r.left!r},{r.right!r},{r.height!r}" for r in fs.regions]
    lines.append(f"centroid,{centroid(fs)!r}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out is not None:
        args.out.write_text(text)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"iaabag: error: {exc}", file=sys.stderr)
        return 1
    handlers = {"run": _cmd_run, "bench": _cmd_bench,
                "compare": _cmd_compare, "iaa": _cmd_iaa}
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"iaabag: error: {exc}", file=sys.stderr)
        return 1
    except (DatasetLoadError, FileNotFoundError) as exc:
        print(f"iaabag: data error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001  deliberate catch-all boundary
        print(f"iaabag: failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
