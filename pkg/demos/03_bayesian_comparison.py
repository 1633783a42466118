"""Is the interval method actually better?  Ask the posterior.

Runs both aggregation methods on a few datasets, collects the per-dataset
mean accuracy differences, and feeds them to the Bayesian signed-rank test.
The three posterior masses answer: probability the majority vote is
practically better, probability the methods are practically equivalent
(inside the rope), probability the interval method is practically better.
"""

import numpy as np

from iaabag import (
    EnsembleConfig,
    bayesian_signed_rank,
    load_from_manifest,
    load_manifest,
    mean_differences,
    read_results,
    run_experiment,
    write_results,
)
from iaabag.synth import write_benchmark


def main():
    manifest = load_manifest(write_benchmark("/tmp/iaabag_demo_data"))
    config = EnsembleConfig(n_bootstraps=20, seed=0)

    paths = []
    for name in ("hepatitis", "heart_statlog", "planning_relax", "parkinson"):
        train_ds, test_ds = load_from_manifest(manifest, name)
        result = run_experiment(train_ds, test_ds, config, repeats=10,
                                dataset_name=name, n_jobs=4)
        path = f"/tmp/iaabag_demo_data/{name}_results.csv"
        write_results(path, result)
        paths.append(path)
        print(f"{name:<16} iaa {result.mean_accuracy('iaa'):.4f}  "
              f"majority {result.mean_accuracy('majority_vote'):.4f}")

    rows = read_results(paths)
    diffs = mean_differences(rows, "accuracy")
    print("\nper-dataset accuracy differences (iaa - majority):")
    for name, diff in sorted(diffs.items()):
        print(f"  {name:<16} {diff:+.4f}")

    values = np.array([diffs[name] for name in sorted(diffs)])
    outcome = bayesian_signed_rank(values, rope_radius=0.01,
                                   rng=np.random.default_rng(7))
    print(f"\np(majority better) = {outcome.p_left:.4f}")
    print(f"p(equivalent)      = {outcome.p_rope:.4f}")
    print(f"p(interval better) = {outcome.p_right:.4f}")


if __name__ == "__main__":
    main()
