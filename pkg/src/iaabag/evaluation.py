"""Experiment harness: repeated runs, metrics, result files, and a
Bayesian signed-rank comparison of the two aggregation routes.

Every repeat derives its own random stream from (seed, repeat index),
trains one bagged forest, and scores interval aggregation and majority
vote on the identical trees.  The signed-rank test consumes one metric
difference per dataset and returns posterior probabilities that the
interval route is practically worse, equivalent (within a rope of
practical equivalence), or better than the vote.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .data import MAIN, OTHER, Dataset
from .ensemble import EnsembleConfig, classify_iaa, derive_rng, train_bagged_forest
from .fuzzy import Interval

__all__ = [
    "METHOD_IAA",
    "METHOD_MAJORITY",
    "RepeatRecord",
    "ExperimentResult",
    "ResultRow",
    "SignedRankResult",
    "accuracy",
    "f_score",
    "run_experiment",
    "bayesian_signed_rank",
    "write_results",
    "read_results",
    "mean_differences",
    "write_posterior_samples",
]

METHOD_IAA = "iaa"
METHOD_MAJORITY = "majority_vote"

RESULTS_SCHEMA = "# iaabag results v1"
POSTERIOR_SCHEMA = "# iaabag posterior v1"


def accuracy(predictions, truth) -> float:
    """Fraction of matching positions."""
    pred = np.asarray(predictions)
    true = np.asarray(truth)
    if pred.shape != true.shape or pred.ndim != 1 or pred.size == 0:
        raise ValueError(f"prediction/truth shapes differ or empty: {pred.shape} vs {true.shape}")
    return float(np.mean(pred == true))


def f_score(predictions, truth, positive: int = MAIN) -> float:
    """F1 of the positive class; 0.0 when precision and recall are both
    undefined or zero (no positives anywhere)."""
    pred = np.asarray(predictions)
    true = np.asarray(truth)
    if pred.shape != true.shape or pred.ndim != 1 or pred.size == 0:
        raise ValueError(f"prediction/truth shapes differ or empty: {pred.shape} vs {true.shape}")
    tp = int(np.sum((pred == positive) & (true == positive)))
    fp = int(np.sum((pred == positive) & (true != positive)))
    fn = int(np.sum((pred != positive) & (true == positive)))
    if tp == 0:
        return 0.0
    return 2.0 * tp / (2.0 * tp + fp + fn)


@dataclass(frozen=True)
class RepeatRecord:
    method: str
    repeat: int
    accuracy: float
    f_score: float


@dataclass(frozen=True)
class ExperimentResult:
    """Per-repeat metric records for both aggregation methods."""

    dataset_name: str
    n_bootstraps: int
    repeats: int
    seed: int
    records: tuple[RepeatRecord, ...]

    def __post_init__(self):
        for method in (METHOD_IAA, METHOD_MAJORITY):
            count = sum(1 for r in self.records if r.method == method)
            if count != self.repeats:
                raise ValueError(f"expected {self.repeats} records for {method}, got {count}")
        for r in self.records:
            if not (0.0 <= r.accuracy <= 1.0 and 0.0 <= r.f_score <= 1.0):
                raise ValueError(f"metric out of [0, 1] in {r}")

    def _values(self, method: str, field: str) -> list[float]:
        values = [getattr(r, field) for r in self.records if r.method == method]
        if not values:
            raise ValueError(f"no records for method {method!r}")
        return values

    def mean_accuracy(self, method: str) -> float:
        return float(np.mean(self._values(method, "accuracy")))

    def mean_f_score(self, method: str) -> float:
        return float(np.mean(self._values(method, "f_score")))


def _score_repeat(train_ds, test_ds, config, repeat):
    """One repeat: train the shared forest, score both routes on every
    test sample."""
    rng = derive_rng(config.seed, repeat)
    forest = train_bagged_forest(train_ds, config, rng)
    cube = forest.probability_cube(test_ds.features)  # (m, n, samples)
    m, n, n_samples = cube.shape

    lo = np.quantile(cube, 0.25, axis=1)
    hi = np.quantile(cube, 0.75, axis=1)
    iaa_pred = np.empty(n_samples, dtype=np.int64)
    for t in range(n_samples):
        intervals = [Interval(float(lo[i, t]), float(hi[i, t])) for i in range(m)]
        iaa_pred[t] = classify_iaa(intervals, config.threshold).label

    main_votes = (cube >= 0.5).sum(axis=(0, 1))
    mv_pred = np.where(2 * main_votes >= m * n, MAIN, OTHER)

    truth = test_ds.labels
    return (
        accuracy(iaa_pred, truth),
        f_score(iaa_pred, truth),
        accuracy(mv_pred, truth),
        f_score(mv_pred, truth),
    )


def run_experiment(
    train_ds: Dataset,
    test_ds: Dataset,
    config: EnsembleConfig,
    repeats: int,
    dataset_name: str = "dataset",
    n_jobs: int = 1,
) -> ExperimentResult:
    """Repeat the full pipeline; each repeat gets a stream derived from
    (seed, repeat), so results do not depend on execution order or thread
    count."""
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    if train_ds.n_features != test_ds.n_features:
        raise ValueError(
            f"train has {train_ds.n_features} features but test has {test_ds.n_features}"
        )

    if n_jobs == 1:
        scores = [_score_repeat(train_ds, test_ds, config, r) for r in range(repeats)]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            scores = list(
                pool.map(lambda r: _score_repeat(train_ds, test_ds, config, r), range(repeats))
            )

    records = []
    for r, (iaa_acc, iaa_f, mv_acc, mv_f) in enumerate(scores):
        records.append(RepeatRecord(METHOD_IAA, r, iaa_acc, iaa_f))
        records.append(RepeatRecord(METHOD_MAJORITY, r, mv_acc, mv_f))
    return ExperimentResult(
        dataset_name=dataset_name,
        n_bootstraps=config.n_bootstraps,
        repeats=repeats,
        seed=config.seed,
        records=tuple(records),
    )


class SignedRankResult(NamedTuple):
    p_left: float
    p_rope: float
    p_right: float
    samples: np.ndarray  # (mc_samples, 3): theta_left, theta_rope, theta_right


def bayesian_signed_rank(
    differences: Sequence[float],
    rope_radius: float = 0.01,
    prior_weight: float = 0.5,
    prior_pseudo: float = 0.0,
    mc_samples: int = 50_000,
    rng: np.random.Generator | int | None = None,
) -> SignedRankResult:
    """Bayesian counterpart of the Wilcoxon signed-rank test.

    The observed differences are augmented with a pseudo-observation
    (``prior_pseudo``) whose Dirichlet concentration is ``prior_weight``;
    the real observations get concentration 1.  Each Monte-Carlo draw
    weights all observation pairs (i, j) by w_i * w_j and allocates the
    pairwise averages (z_i + z_j) / 2 to three regions: below -rope, inside
    [-rope, +rope], above +rope.  The posterior probability of a region is
    the fraction of draws in which its total weight is the strict maximum,
    with exact ties split evenly.
    """
    diffs = np.asarray(differences, dtype=np.float64)
    if diffs.ndim != 1 or diffs.size == 0:
        raise ValueError("differences must be a non-empty 1-D sequence")
    if rope_radius < 0:
        raise ValueError(f"rope_radius must be >= 0, got {rope_radius}")
    if mc_samples < 1:
        raise ValueError(f"mc_samples must be >= 1, got {mc_samples}")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)

    z = np.concatenate(([prior_pseudo], diffs))
    pair_avg = 0.5 * (z[:, None] + z[None, :])
    in_left = (pair_avg < -rope_radius).astype(np.float64)
    in_right = (pair_avg > rope_radius).astype(np.float64)
    in_rope = 1.0 - in_left - in_right

    alpha = np.ones(z.size)
    alpha[0] = prior_weight
    weights = rng.dirichlet(alpha, size=mc_samples)

    theta = np.empty((mc_samples, 3))
    theta[:, 0] = np.einsum("ki,ij,kj->k", weights, in_left, weights)
    theta[:, 1] = np.einsum("ki,ij,kj->k", weights, in_rope, weights)
    theta[:, 2] = np.einsum("ki,ij,kj->k", weights, in_right, weights)

    # integer win counts in units of 1/6 so two- and three-way ties split evenly
    best = theta.max(axis=1, keepdims=True)
    is_max = theta == best
    tied = is_max.sum(axis=1)
    units = np.zeros(3, dtype=np.int64)
    for region in range(3):
        units[region] = (np.where(is_max[:, region], 6 // tied, 0)).sum()
    assert units.sum() == 6 * mc_samples
    p_left, p_rope, p_right = (units / (6 * mc_samples)).tolist()

    return SignedRankResult(p_left, p_rope, p_right, theta)


@dataclass(frozen=True)
class ResultRow:
    dataset: str
    method: str
    repeat: int
    accuracy: float
    f_score: float


def write_results(path: str | Path, result: ExperimentResult) -> None:
    """One record per (method, repeat); schema named in the comment header.

    Written in one pass after the experiment completes, never partially.
    """
    with open(path, "w", newline="") as fh:
        fh.write(RESULTS_SCHEMA + "\n")
        fh.write(
            f"# dataset={result.dataset_name} n_bootstraps={result.n_bootstraps} "
            f"repeats={result.repeats} seed={result.seed}\n"
        )
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dataset", "method", "repeat", "accuracy", "f_score"])
        for rec in result.records:
            writer.writerow(
                [result.dataset_name, rec.method, rec.repeat, repr(rec.accuracy), repr(rec.f_score)]
            )


def read_results(paths: Iterable[str | Path]) -> list[ResultRow]:
    rows = []
    for path in paths:
        with open(path, newline="") as fh:
            first = fh.readline().rstrip("\n")
            if first != RESULTS_SCHEMA:
                raise ValueError(
                    f"{path}: not a results file (expected {RESULTS_SCHEMA!r} "
                    f"on line 1, got {first!r})"
                )
            reader = csv.reader(line for line in fh if not line.startswith("#"))
            header = next(reader, None)
            if header != ["dataset", "method", "repeat", "accuracy", "f_score"]:
                raise ValueError(f"{path}: bad column header {header}")
            for row in reader:
                rows.append(ResultRow(row[0], row[1], int(row[2]), float(row[3]), float(row[4])))
    return rows


def mean_differences(rows: Sequence[ResultRow], metric: str = "accuracy") -> dict[str, float]:
    """Per-dataset (interval-aggregation mean - majority-vote mean).

    Positive values favour the interval route.  Every dataset must carry
    records for both methods.
    """
    if metric not in ("accuracy", "f_score"):
        raise ValueError(f"metric must be 'accuracy' or 'f_score', got {metric!r}")
    grouped: dict[str, dict[str, list[float]]] = {}
    for row in rows:
        grouped.setdefault(row.dataset, {}).setdefault(row.method, []).append(
            getattr(row, metric)
        )
    diffs = {}
    for dataset in sorted(grouped):
        methods = grouped[dataset]
        if METHOD_IAA not in methods or METHOD_MAJORITY not in methods:
            raise ValueError(
                f"dataset {dataset!r} lacks records for both methods "
                f"(has {sorted(methods)})"
            )
        diffs[dataset] = float(np.mean(methods[METHOD_IAA]) - np.mean(methods[METHOD_MAJORITY]))
    return diffs


def write_posterior_samples(path: str | Path, samples: np.ndarray) -> None:
    """One (theta_left, theta_rope, theta_right) triple per line."""
    with open(path, "w", newline="") as fh:
        fh.write(POSTERIOR_SCHEMA + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["theta_left", "theta_rope", "theta_right"])
        for left, rope, right in samples:
            writer.writerow([repr(float(left)), repr(float(rope)), repr(float(right))])
