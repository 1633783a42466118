"""End-to-end acceptance checks.

Every test prints a visible [acceptance] PASS/FAIL line so the checklist
survives output capture.  The benchmark sweep (30 repeats, ensemble size
20, seed 0) runs once in a session fixture and feeds both the direction
and the magnitude checks.
"""

import contextlib
import os
import time

import numpy as np
import pytest

from iaabag.cli import main
from iaabag.data import Dataset, load_from_manifest, load_manifest
from iaabag.ensemble import (
    EnsembleConfig,
    classify_iaa,
    classify_majority_vote,
    derive_rng,
    majority_vote_label,
    train_bagged_forest,
    uncertainty_intervals,
)
from iaabag.evaluation import (
    METHOD_IAA,
    METHOD_MAJORITY,
    bayesian_signed_rank,
    run_experiment,
)
from iaabag.fuzzy import iaa_aggregate, Interval
from iaabag.synth import make_separable, write_benchmark

THIRD = 1.0 / 3.0
N_JOBS = min(4, os.cpu_count() or 1)


@contextlib.contextmanager
def checklist(capsys, name):
    try:
        yield
    except Exception:
        with capsys.disabled():
            print(f"[acceptance] FAIL {name}")
        raise
    with capsys.disabled():
        print(f"[acceptance] PASS {name}")


@pytest.fixture(scope="session")
def bench_dir(tmp_path_factory):
    dest = tmp_path_factory.mktemp("acceptance_bench")
    return write_benchmark(dest).parent


@pytest.fixture(scope="session")
def benchmark_results(bench_dir):
    """Mean scores of both methods on all ten datasets: n=20, 30 repeats."""
    manifest = load_manifest(bench_dir / "manifest.ini")
    config = EnsembleConfig(n_bootstraps=20, seed=0)
    results = {}
    for name in sorted(manifest.entries):
        train_ds, test_ds = load_from_manifest(manifest, name)
        results[name] = run_experiment(train_ds, test_ds, config, repeats=30,
                                       dataset_name=name, n_jobs=N_JOBS)
    return results


def test_worked_example_through_cli(capsys, tmp_path):
    with checklist(capsys, "worked interval example: exact regions and centroid 3.5"):
        path = tmp_path / "intervals.txt"
        path.write_text("1,4\n2,5\n3,6\n")
        started = time.perf_counter()
        code = main(["iaa", str(path)])
        elapsed = time.perf_counter() - started
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        regions = [tuple(float(v) for v in ln.split(",")) for ln in lines[1:-1]]
        assert regions == [
            (1.0, 2.0, THIRD),
            (2.0, 3.0, 2 * THIRD),
            (3.0, 4.0, 1.0),
            (4.0, 5.0, 2 * THIRD),
            (5.0, 6.0, THIRD),
        ]
        assert float(lines[-1].split(",")[1]) == 3.5
        assert elapsed < 1.0


def test_membership_matches_counting_oracle_at_scale(capsys):
    name = "aggregated membership vs counting oracle: 1000 sets x 1000 points"
    with checklist(capsys, name):
        rng = np.random.default_rng(20240917)
        started = time.perf_counter()
        mismatches = 0
        spot_checks = 0
        for _ in range(1000):
            n = int(rng.integers(1, 11))
            bounds = np.sort(rng.uniform(-10.0, 10.0, size=(n, 2)), axis=1)
            intervals = [Interval(lo, hi) for lo, hi in bounds]
            fs = iaa_aggregate(intervals)

            span = bounds.max() - bounds.min()
            grid = np.linspace(bounds.min() - 0.1 * span,
                               bounds.max() + 0.1 * span, 1000)
            brute = ((bounds[:, :1] <= grid) & (grid <= bounds[:, 1:])).sum(0) / n

            lefts = np.array([r.left for r in fs.regions])
            rights = np.array([r.right for r in fs.regions])
            heights = np.array([r.height for r in fs.regions])
            inside = (lefts[:, None] <= grid) & (grid <= rights[:, None])
            stepwise = np.where(inside, heights[:, None], 0.0).max(axis=0)

            mismatches += int(np.count_nonzero(stepwise != brute))
            # the staircase arrays must agree with the membership method too
            for x in grid[::97]:
                spot_checks += 1
                if fs.membership(float(x)) != brute[np.searchsorted(grid, x)]:
                    mismatches += 1
        elapsed = time.perf_counter() - started
        assert mismatches == 0
        assert spot_checks >= 10_000
        assert elapsed < 10.0


def test_pure_class_consensus(capsys):
    with checklist(capsys, "pure-class training data: both methods agree on every sample"):
        rng = np.random.default_rng(5)
        X_train = rng.standard_normal((40, 3))
        X_test = rng.standard_normal((25, 3))
        config = EnsembleConfig(n_bootstraps=8, seed=11)
        for label in (1, 0):
            labels = np.full(40, label, dtype=np.int8)
            ds = Dataset(X_train, labels, ("a", "b", "c"), "1", "0")
            forest = train_bagged_forest(ds, config, derive_rng(11, 0))
            cube = forest.probability_cube(X_test)
            assert np.all(cube == float(label))  # every P_ij identical
            for sample in X_test:
                tableau = forest.tableau(sample)
                iaa = classify_iaa(uncertainty_intervals(tableau)).label
                vote = classify_majority_vote(ds, sample, config, derive_rng(11, 0))
                assert iaa == vote == label


def test_separable_dataset_sanity(capsys):
    with checklist(capsys, "separable dataset: both methods >= 0.95 mean accuracy"):
        started = time.perf_counter()
        train_ds, test_ds = make_separable(n_train=200, n_test=100,
                                           n_features=4, margin=1.0, seed=0)
        config = EnsembleConfig(n_bootstraps=20, seed=0)
        result = run_experiment(train_ds, test_ds, config, repeats=5,
                                dataset_name="separable", n_jobs=N_JOBS)
        elapsed = time.perf_counter() - started
        assert result.mean_accuracy(METHOD_IAA) >= 0.95
        assert result.mean_accuracy(METHOD_MAJORITY) >= 0.95
        assert elapsed < 30.0


def test_benchmark_direction(capsys, benchmark_results):
    name = "ten-dataset benchmark: interval route >= majority vote on >= 7 datasets"
    with checklist(capsys, name):
        wins = 0
        for dataset, result in sorted(benchmark_results.items()):
            ia = result.mean_accuracy(METHOD_IAA)
            mv = result.mean_accuracy(METHOD_MAJORITY)
            with capsys.disabled():
                print(f"[acceptance]   {dataset:<16} iaa={ia:.4f} "
                      f"majority={mv:.4f} diff={ia - mv:+.4f}")
            wins += ia >= mv
        assert wins >= 7, f"interval route won only {wins} of 10"


def test_benchmark_magnitude_wisconsin(capsys, benchmark_results):
    name = "wisconsin magnitudes: both methods within 0.05 of 0.984 / 0.978"
    with checklist(capsys, name):
        result = benchmark_results["wisconsin"]
        ia = result.mean_accuracy(METHOD_IAA)
        mv = result.mean_accuracy(METHOD_MAJORITY)
        assert abs(ia - 0.984) <= 0.05, f"interval accuracy {ia}"
        assert abs(mv - 0.978) <= 0.05, f"majority accuracy {mv}"


def test_bayesian_sanity(capsys):
    with checklist(capsys, "signed-rank posterior: rope capture, direction, antisymmetry"):
        started = time.perf_counter()
        zeros = bayesian_signed_rank(np.zeros(12), rope_radius=0.01,
                                     mc_samples=20_000,
                                     rng=np.random.default_rng(0))
        assert zeros.p_rope == 1.0

        strong = bayesian_signed_rank(np.full(10, 0.1), rope_radius=0.01,
                                      mc_samples=50_000,
                                      rng=np.random.default_rng(1))
        assert strong.p_right > 0.99

        diffs = np.array([0.04, -0.01, 0.02, 0.00, -0.03, 0.05, 0.01, -0.02])
        mc = 50_000
        forward = bayesian_signed_rank(diffs, mc_samples=mc,
                                       rng=np.random.default_rng(2))
        mirored = bayesian_signed_rank(-diffs, mc_samples=mc,
                                       rng=np.random.default_rng(2))
        bound = 2.0 / np.sqrt(mc)
        assert abs(forward.p_left - mirored.p_right) <= bound
        assert abs(forward.p_right - mirored.p_left) <= bound
        assert abs(forward.p_rope - mirored.p_rope) <= bound
        elapsed = time.perf_counter() - started
        assert elapsed < 10.0


def test_run_determinism(capsys, bench_dir, tmp_path):
    with checklist(capsys, "repeated runs: byte-identical result files, serial and parallel"):
        base = ["run", "--manifest", str(bench_dir / "manifest.ini"),
                "--dataset", "hepatitis", "--repeats", "5",
                "--n-bootstraps", "20", "--seed", "0"]
        payloads = []
        for tag, jobs in (("a", "1"), ("b", "4"), ("c", "1")):
            out = tmp_path / f"{tag}.csv"
            assert main(base + ["--jobs", jobs, "--out", str(out)]) == 0
            payloads.append(out.read_bytes())
        assert payloads[0] == payloads[1] == payloads[2]
