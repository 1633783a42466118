"""Deterministic synthetic datasets for demos and the benchmark harness.

The public UCI medical datasets used to profile the aggregation methods
cannot be redistributed here, so ``write_benchmark`` materialises ten
stand-ins that copy their shapes (feature count, train/test sizes) and
approximate their difficulty: class-conditional feature shifts of varying
strength, nuisance features, integer-coded columns, label noise to cap the
reachable accuracy, and missing cells on the two datasets that have them.
Every byte is a pure function of the per-dataset seed.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .data import Dataset

__all__ = ["SyntheticSpec", "BENCHMARK_SPECS", "write_benchmark", "make_separable"]


@dataclass(frozen=True)
class SyntheticSpec:
    name: str
    n_features: int
    n_train: int
    n_test: int
    main_class: str
    other_class: str
    pos_fraction: float
    n_informative: int
    class_sep: float
    label_noise: float
    missing_rate: float = 0.0
    integer_fraction: float = 0.25
    seed: int = 0


# Shapes follow the ten-dataset medical benchmark (Wisconsin Breast Cancer,
# Pima, Bupa, Hepatitis, Heart-Statlog, SpectF, SaHeart, Planning Relax,
# Parkinson, HCC); separation and noise are tuned so bagged trees land near
# the accuracies reported for the originals.
BENCHMARK_SPECS: tuple[SyntheticSpec, ...] = (
    SyntheticSpec("wisconsin", 9, 499, 200, "malignant", "benign", 0.35, 7, 2.80, 0.012, seed=101),
    SyntheticSpec("pima", 8, 576, 192, "1", "0", 0.35, 8, 2.60, 0.200, seed=102),
    SyntheticSpec("bupa", 6, 200, 145, "2", "1", 0.58, 5, 2.60, 0.210, seed=103),
    SyntheticSpec("hepatitis", 19, 80, 75, "live", "die", 0.79, 8, 0.90, 0.080, missing_rate=0.05, seed=104),
    SyntheticSpec("heart_statlog", 13, 180, 90, "present", "absent", 0.44, 8, 1.80, 0.120, seed=105),
    SyntheticSpec("spectf", 44, 176, 91, "1", "0", 0.79, 35, 1.80, 0.170, seed=106),
    SyntheticSpec("saheart", 9, 304, 158, "1", "0", 0.35, 8, 2.00, 0.250, seed=107),
    SyntheticSpec("planning_relax", 12, 120, 62, "2", "1", 0.71, 4, 0.45, 0.020, seed=108),
    SyntheticSpec("parkinson", 22, 130, 65, "1", "0", 0.75, 12, 2.40, 0.045, seed=109),
    SyntheticSpec("hcc", 49, 110, 55, "1", "0", 0.62, 12, 3.00, 0.130, missing_rate=0.08, seed=110),
)


def _generate(spec: SyntheticSpec):
    """Feature strings + label tokens for one dataset, train split first."""
    rng = np.random.default_rng(np.random.SeedSequence((20240917, spec.seed)))
    n = spec.n_train + spec.n_test
    m = spec.n_features

    y_true = (rng.random(n) < spec.pos_fraction).astype(np.int64)
    signed = 2.0 * y_true - 1.0

    X = rng.standard_normal((n, m))
    effects = spec.class_sep * rng.uniform(0.5, 1.0, size=spec.n_informative)
    signs = rng.choice((-1.0, 1.0), size=spec.n_informative)
    informative = rng.permutation(m)[: spec.n_informative]
    for k, col in enumerate(informative):
        X[:, col] += 0.5 * signed * effects[k] * signs[k]

    # cosmetic rescaling; a few columns snap to an integer grid
    scales = rng.uniform(0.5, 12.0, size=m)
    offsets = rng.uniform(-4.0, 40.0, size=m)
    X = X * scales + offsets
    n_int = int(round(spec.integer_fraction * m))
    int_cols = rng.permutation(m)[:n_int]
    X[:, int_cols] = np.round(X[:, int_cols])

    flips = rng.random(n) < spec.label_noise
    y_obs = np.where(flips, 1 - y_true, y_true)

    missing = rng.random((n, m)) < spec.missing_rate

    header = [f"x{c + 1}" for c in range(m)] + ["class"]
    rows = []
    for r in range(n):
        cells = []
        for c in range(m):
            if missing[r, c]:
                cells.append("?")
            elif c in int_cols:
                cells.append(str(int(X[r, c])))
            else:
                cells.append(f"{X[r, c]:.4f}")
        cells.append(spec.main_class if y_obs[r] == 1 else spec.other_class)
        rows.append(cells)
    return header, rows[: spec.n_train], rows[spec.n_train :]


def write_benchmark(
    dest: str | Path, specs: tuple[SyntheticSpec, ...] = BENCHMARK_SPECS
) -> Path:
    """Write every dataset's train/test CSV pair plus a manifest.

    Returns the manifest path; regeneration into the same directory
    produces identical files.
    """
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    manifest_path = dest / "manifest.ini"
    with open(manifest_path, "w") as mf:
        mf.write("# synthetic stand-ins for the ten-dataset medical benchmark\n")
        for spec in specs:
            header, train_rows, test_rows = _generate(spec)
            for suffix, rows in (("train", train_rows), ("test", test_rows)):
                with open(dest / f"{spec.name}_{suffix}.csv", "w", newline="") as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(header)
                    writer.writerows(rows)
            mf.write(
                f"\n[{spec.name}]\n"
                f"train_path = {spec.name}_train.csv\n"
                f"test_path = {spec.name}_test.csv\n"
                f"main_class = {spec.main_class}\n"
                f"expected_features = {spec.n_features}\n"
                f"expected_train_rows = {spec.n_train}\n"
                f"expected_test_rows = {spec.n_test}\n"
            )
    return manifest_path


def make_separable(
    n_train: int = 200,
    n_test: int = 100,
    n_features: int = 4,
    margin: float = 1.0,
    seed: int = 0,
) -> tuple[Dataset, Dataset]:
    """Sanity-check data: every single feature separates the classes.

    Class 1 features lie in [margin/2, margin], class 0 in [-margin,
    -margin/2], so any tree that may use any one feature already classifies
    perfectly, and so does every leave-one-feature-out tree.
    """
    if margin <= 0:
        raise ValueError(f"margin must be positive, got {margin}")
    rng = np.random.default_rng(np.random.SeedSequence((20240917, 7, seed)))

    def build(n):
        y = (rng.random(n) < 0.5).astype(np.int8)
        signed = (2.0 * y - 1.0)[:, None]
        X = signed * (margin / 2.0 + rng.uniform(0.0, margin / 2.0, size=(n, n_features)))
        names = tuple(f"x{c + 1}" for c in range(n_features))
        return Dataset(X, y, names, "1", "0")

    return build(n_train), build(n_test)
