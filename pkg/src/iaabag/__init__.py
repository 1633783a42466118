"""Interval-based aggregation for bagged binary classifiers.

Bagging turns one test sample into a distribution of class probabilities
per classifier; the quartile range of each distribution becomes an
uncertainty interval, the intervals fuse into a type-1 fuzzy set whose
membership at x is the fraction of intervals covering x, and the centroid
of that set is the ensemble's probability for the class of interest.
The package also ships the majority-vote baseline over the same trees and
a Bayesian signed-rank harness to compare the two.
"""

from .data import (
    MAIN,
    OTHER,
    Dataset,
    DatasetLoadError,
    DatasetManifest,
    ManifestEntry,
    load_dataset,
    load_from_manifest,
    load_manifest,
    validate_against_manifest,
)
from .ensemble import (
    BaggedForest,
    EnsembleConfig,
    IaaDecision,
    ProbabilityTableau,
    bootstrap_sample,
    classify_iaa,
    classify_majority_vote,
    collect_probabilities,
    derive_rng,
    majority_vote_label,
    train_bagged_forest,
    uncertainty_intervals,
)
from .evaluation import (
    METHOD_IAA,
    METHOD_MAJORITY,
    ExperimentResult,
    RepeatRecord,
    ResultRow,
    SignedRankResult,
    accuracy,
    bayesian_signed_rank,
    f_score,
    mean_differences,
    read_results,
    run_experiment,
    write_posterior_samples,
    write_results,
)
from .fuzzy import Interval, Region, Type1FuzzySet, centroid, iaa_aggregate, membership
from .synth import BENCHMARK_SPECS, SyntheticSpec, make_separable, write_benchmark
from .tree import DecisionTree, TreeParams
from .tree import train as train_tree

__version__ = "0.1.0"

__all__ = [
    "MAIN",
    "OTHER",
    "Dataset",
    "DatasetLoadError",
    "DatasetManifest",
    "ManifestEntry",
    "load_dataset",
    "load_from_manifest",
    "load_manifest",
    "validate_against_manifest",
    "BaggedForest",
    "EnsembleConfig",
    "IaaDecision",
    "ProbabilityTableau",
    "bootstrap_sample",
    "classify_iaa",
    "classify_majority_vote",
    "collect_probabilities",
    "derive_rng",
    "majority_vote_label",
    "train_bagged_forest",
    "uncertainty_intervals",
    "METHOD_IAA",
    "METHOD_MAJORITY",
    "ExperimentResult",
    "RepeatRecord",
    "ResultRow",
    "SignedRankResult",
    "accuracy",
    "bayesian_signed_rank",
    "f_score",
    "mean_differences",
    "read_results",
    "run_experiment",
    "write_posterior_samples",
    "write_results",
    "Interval",
    "Region",
    "Type1FuzzySet",
    "centroid",
    "iaa_aggregate",
    "membership",
    "BENCHMARK_SPECS",
    "SyntheticSpec",
    "make_separable",
    "write_benchmark",
    "DecisionTree",
    "TreeParams",
    "train_tree",
    "__version__",
]
