"""The full ten-dataset sweep, as a script.

Equivalent to:

    iaabag bench --manifest <dir>/manifest.ini --repeats 30 --out results
    iaabag compare results/*.csv

Thirty repeats over all ten datasets trains roughly 115k trees; expect a
couple of minutes.  Pass a smaller repeat count as the first argument to
sketch the table quickly.
"""

import sys

import numpy as np

from iaabag import (
    EnsembleConfig,
    bayesian_signed_rank,
    load_from_manifest,
    load_manifest,
    run_experiment,
)
from iaabag.synth import write_benchmark


def main():
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 30
    manifest = load_manifest(write_benchmark("/tmp/iaabag_demo_data"))
    config = EnsembleConfig(n_bootstraps=20, seed=0)

    print(f"{'dataset':<16} {'iaa_acc':>8} {'mv_acc':>8} {'diff':>8}")
    diffs = []
    for name in sorted(manifest.entries):
        train_ds, test_ds = load_from_manifest(manifest, name)
        result = run_experiment(train_ds, test_ds, config, repeats=repeats,
                                dataset_name=name, n_jobs=4)
        ia = result.mean_accuracy("iaa")
        ma = result.mean_accuracy("majority_vote")
        diffs.append(ia - ma)
        print(f"{name:<16} {ia:>8.4f} {ma:>8.4f} {ia - ma:>+8.4f}")

    wins = sum(d >= 0 for d in diffs)
    print(f"\ninterval aggregation >= majority vote on {wins} of {len(diffs)} datasets")

    outcome = bayesian_signed_rank(np.array(diffs), rope_radius=0.01,
                                   rng=np.random.default_rng(7))
    print(f"p(majority better) = {outcome.p_left:.4f}")
    print(f"p(equivalent)      = {outcome.p_rope:.4f}")
    print(f"p(interval better) = {outcome.p_right:.4f}")


if __name__ == "__main__":
    main()
