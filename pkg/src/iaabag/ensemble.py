"""Bagged leave-one-feature-out tree ensembles with two aggregation routes.

For a dataset with m features the ensemble holds m decision trees, tree i
trained without feature i.  Each of n bootstrap rounds redraws the training
set with replacement and fits all m trees on that same draw, giving an
m x n table of main-class probabilities per test sample.  From there:

* interval route: each classifier row collapses to its interquartile
  interval [Q1, Q3]; the m intervals fuse into a type-1 fuzzy set whose
  centroid, thresholded at 0.5, yields the label;
* majority vote: every one of the m x n trees casts a hard label and the
  larger camp wins (ties go to the main class).

Both routes consult the identical trained trees, so for a fixed seed any
performance difference comes from the aggregation alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .data import MAIN, OTHER, Dataset
from .fuzzy import Interval, Type1FuzzySet, centroid, iaa_aggregate
from .tree import DecisionTree, TreeParams, train

__all__ = [
    "EnsembleConfig",
    "ProbabilityTableau",
    "BaggedForest",
    "IaaDecision",
    "derive_rng",
    "bootstrap_sample",
    "train_bagged_forest",
    "collect_probabilities",
    "uncertainty_intervals",
    "classify_iaa",
    "classify_majority_vote",
    "majority_vote_label",
]


@dataclass(frozen=True)
class EnsembleConfig:
    """Knobs shared by both aggregation routes."""

    n_bootstraps: int = 20
    seed: int = 0
    tree_params: TreeParams = field(default_factory=TreeParams)
    threshold: float = 0.5

    def __post_init__(self):
        if self.n_bootstraps < 1:
            raise ValueError(f"n_bootstraps must be >= 1, got {self.n_bootstraps}")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")


@dataclass(frozen=True)
class ProbabilityTableau:
    """m x n matrix: entry (i, j) is classifier i's main-class probability
    under bootstrap j."""

    values: np.ndarray

    def __post_init__(self):
        v = self.values
        if v.ndim != 2 or v.size == 0:
            raise ValueError("tableau must be a non-empty 2-D matrix")
        if not np.isfinite(v).all() or (v < 0).any() or (v > 1).any():
            raise ValueError("tableau entries must lie in [0, 1]")

    @property
    def n_classifiers(self) -> int:
        return self.values.shape[0]

    @property
    def n_bootstraps(self) -> int:
        return self.values.shape[1]


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for (seed, key...); identical inputs, identical
    stream.  Parallel workers each derive their own, so scheduling order
    cannot affect results."""
    return np.random.default_rng(np.random.SeedSequence((seed, *key)))


def bootstrap_sample(train_ds: Dataset, rng: np.random.Generator) -> Dataset:
    """Uniform with-replacement redraw of the training rows, same size."""
    if train_ds.n_rows == 0:
        raise ValueError("cannot bootstrap an empty training set")
    indices = rng.integers(0, train_ds.n_rows, size=train_ds.n_rows)
    return train_ds.take(indices)


class BaggedForest:
    """The m x n trained trees behind one ensemble decision.

    trees[j][i] is the tree of bootstrap round j with feature i withheld.
    """

    def __init__(self, trees, n_features: int):
        self.trees = trees
        self.n_features = n_features
        self.n_bootstraps = len(trees)

    @property
    def n_classifiers(self) -> int:
        # one leave-one-feature-out classifier per feature
        return self.n_features

    def probability_cube(self, samples: np.ndarray) -> np.ndarray:
        """(m, n, n_samples) cube of main-class probabilities."""
        X = np.asarray(samples, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(1, -1)
        cube = np.empty((self.n_features, self.n_bootstraps, X.shape[0]))
        for j, row in enumerate(self.trees):
            for i, t in enumerate(row):
                cube[i, j, :] = t.predict_proba(X)
        return cube

    def tableau(self, sample: np.ndarray) -> ProbabilityTableau:
        return ProbabilityTableau(self.probability_cube(sample)[:, :, 0])


def train_bagged_forest(
    train_ds: Dataset, config: EnsembleConfig, rng: np.random.Generator
) -> BaggedForest:
    """Draw n bootstraps in stream order; fit all m masked trees on each."""
    m = train_ds.n_features
    if m < 2:
        raise ValueError(
            f"need at least 2 features for leave-one-feature-out training, got {m}"
        )
    all_features = set(range(m))
    trees = []
    for _ in range(config.n_bootstraps):
        boot = bootstrap_sample(train_ds, rng)
        trees.append(
            tuple(
                train(boot.features, boot.labels, all_features - {i}, config.tree_params)
                for i in range(m)
            )
        )
    return BaggedForest(tuple(trees), m)


def collect_probabilities(
    train_ds: Dataset,
    test_sample: np.ndarray,
    config: EnsembleConfig,
    rng: np.random.Generator,
) -> ProbabilityTableau:
    """Train a fresh forest from the stream and tabulate one sample's
    probabilities."""
    return train_bagged_forest(train_ds, config, rng).tableau(test_sample)


def uncertainty_intervals(tableau: ProbabilityTableau) -> list[Interval]:
    """Per-classifier [Q1, Q3] of its bootstrap probabilities.

    Quartiles use linear interpolation between closest ranks: the f-quantile
    of n sorted values sits at fractional position (n - 1) * f.
    """
    lo = np.quantile(tableau.values, 0.25, axis=1)
    hi = np.quantile(tableau.values, 0.75, axis=1)
    return [Interval(float(a), float(b)) for a, b in zip(lo, hi)]


class IaaDecision(NamedTuple):
    label: int
    centroid: float
    fuzzy_set: Type1FuzzySet


def classify_iaa(intervals: list[Interval], threshold: float = 0.5) -> IaaDecision:
    """Fuse the classifiers' intervals and threshold the fuzzy centroid.

    The main class wins when the centroid reaches the threshold (>=), so an
    exactly balanced fuzzy set resolves to the main class.
    """
    if not intervals:
        raise ValueError("classify_iaa needs at least one interval")
    fs = iaa_aggregate(intervals)
    c = centroid(fs)
    label = MAIN if c >= threshold else OTHER
    return IaaDecision(label, c, fs)


def classify_majority_vote(
    train_ds: Dataset,
    test_sample: np.ndarray,
    config: EnsembleConfig,
    rng: np.random.Generator,
) -> int:
    """Hard-vote over all m x n trees of a freshly trained forest.

    With the same seed the electorate is tree-for-tree identical to the
    forest behind collect_probabilities.  A tree votes main where its leaf
    probability reaches 0.5; an exact vote tie also goes to the main class.
    """
    forest = train_bagged_forest(train_ds, config, rng)
    return majority_vote_label(forest.tableau(test_sample))


def majority_vote_label(tableau: ProbabilityTableau, threshold: float = 0.5) -> int:
    """Hard vote per tree (probability >= threshold); vote ties go to main."""
    main_votes = int((tableau.values >= threshold).sum())
    total = tableau.values.size
    return MAIN if 2 * main_votes >= total else OTHER
