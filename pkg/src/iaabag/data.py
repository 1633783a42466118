"""Dataset loading for the benchmark harness.

Datasets arrive as delimited text: one sample per row, comma-separated
numeric features with the class label in the last column.  A header row is
detected automatically when any feature cell of the first row is
non-numeric.  Missing feature cells (a configurable token, ``?`` by
default) are imputed with the per-feature median of the *training* split,
so no test information leaks into the statistics.  Labels are mapped onto
{1, 0} with 1 marking the designated main (positive) class.

A manifest (INI format, one section per dataset) names the file pair, the
main-class token, and optional expected shapes used for validation.
"""

from __future__ import annotations

import configparser
import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Dataset",
    "DatasetLoadError",
    "ManifestEntry",
    "DatasetManifest",
    "load_dataset",
    "load_manifest",
    "load_from_manifest",
    "validate_against_manifest",
]

MAIN = 1
OTHER = 0

DEFAULT_MISSING_TOKEN = "?"


class DatasetLoadError(Exception):
    """Unreadable, malformed, or non-binary dataset input."""


@dataclass(frozen=True)
class Dataset:
    """Imputed feature matrix plus binary labels (1 = main class)."""

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]
    main_class: str
    other_class: str

    def __post_init__(self):
        X, y = self.features, self.labels
        if X.ndim != 2 or X.shape[0] == 0:
            raise ValueError("features must be a non-empty 2-D matrix")
        if y.shape != (X.shape[0],):
            raise ValueError(f"labels shape {y.shape} does not match {X.shape[0]} rows")
        if not np.isfinite(X).all():
            raise ValueError("features contain non-finite values after imputation")
        if not np.isin(y, (MAIN, OTHER)).all():
            raise ValueError("labels must be 0 or 1")
        if len(self.feature_names) != X.shape[1]:
            raise ValueError("feature_names length does not match feature count")

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def take(self, indices: np.ndarray) -> "Dataset":
        """New dataset from the given row indices (used by resampling)."""
        return Dataset(
            self.features[indices],
            self.labels[indices],
            self.feature_names,
            self.main_class,
            self.other_class,
        )


def _read_rows(path: Path) -> list[tuple[int, list[str]]]:
    try:
        with open(path, newline="") as fh:
            rows = [
                (lineno, [cell.strip() for cell in row])
                for lineno, row in enumerate(csv.reader(fh), start=1)
                if row and any(cell.strip() for cell in row)
            ]
    except OSError as exc:
        raise DatasetLoadError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DatasetLoadError(f"{path}: no data rows")
    return rows


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _parse_file(path: Path, missing_token: str):
    """Returns (feature matrix with NaN for missing, raw label tokens, names)."""
    rows = _read_rows(path)
    width = len(rows[0][1])
    if width < 2:
        raise DatasetLoadError(f"{path}: rows need at least one feature plus a label column")

    header = None
    first_features = rows[0][1][:-1]
    if any(not _is_number(c) and c != missing_token for c in first_features):
        header = rows[0][1]
        rows = rows[1:]
        if not rows:
            raise DatasetLoadError(f"{path}: header but no data rows")

    names = tuple(header[:-1]) if header else tuple(f"f{i}" for i in range(width - 1))
    matrix = np.empty((len(rows), width - 1), dtype=np.float64)
    labels = []
    for r, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise DatasetLoadError(
                f"{path}: line {lineno} has {len(row)} columns, expected {width}"
            )
        for c, cell in enumerate(row[:-1]):
            if cell == missing_token:
                matrix[r, c] = np.nan
            else:
                try:
                    matrix[r, c] = float(cell)
                except ValueError:
                    raise DatasetLoadError(
                        f"{path}: line {lineno}, column {c + 1}: "
                        f"cannot parse {cell!r} as a number"
                    ) from None
        labels.append(row[-1])
    return matrix, labels, names


def load_dataset(
    train_path: str | Path,
    test_path: str | Path,
    main_class_value: str,
    missing_token: str = DEFAULT_MISSING_TOKEN,
) -> tuple[Dataset, Dataset]:
    """Load a train/test file pair into imputed, label-mapped datasets.

    Imputation medians come from the training split only.  Exactly two
    distinct label tokens must appear across both splits, one of them
    ``main_class_value``.
    """
    train_path, test_path = Path(train_path), Path(test_path)
    X_train, raw_train, names_train = _parse_file(train_path, missing_token)
    X_test, raw_test, names_test = _parse_file(test_path, missing_token)
    if X_train.shape[1] != X_test.shape[1]:
        raise DatasetLoadError(
            f"feature count mismatch: {train_path} has {X_train.shape[1]}, "
            f"{test_path} has {X_test.shape[1]}"
        )

    classes = sorted(set(raw_train) | set(raw_test))
    if len(classes) != 2:
        raise DatasetLoadError(
            f"expected exactly two label values across {train_path} and {test_path}, "
            f"got {classes}"
        )
    main = str(main_class_value)
    if main not in classes:
        raise DatasetLoadError(f"main class {main!r} not among label values {classes}")
    other = classes[0] if classes[1] == main else classes[1]

    # train-only medians, applied to both splits
    for c in range(X_train.shape[1]):
        col = X_train[:, c]
        missing = np.isnan(col)
        if missing.all():
            raise DatasetLoadError(
                f"{train_path}: feature column {c + 1} has no observed training values"
            )
        if missing.any() or np.isnan(X_test[:, c]).any():
            median = float(np.median(col[~missing]))
            X_train[missing, c] = median
            X_test[np.isnan(X_test[:, c]), c] = median

    names = names_train

    def build(X, raw):
        y = np.fromiter((MAIN if t == main else OTHER for t in raw), dtype=np.int8, count=len(raw))
        return Dataset(X, y, names, main, other)

    return build(X_train, raw_train), build(X_test, raw_test)


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    train_path: Path
    test_path: Path
    main_class: str
    missing_token: str = DEFAULT_MISSING_TOKEN
    expected_features: int | None = None
    expected_train_rows: int | None = None
    expected_test_rows: int | None = None


@dataclass(frozen=True)
class DatasetManifest:
    path: Path
    entries: dict[str, ManifestEntry]

    def __getitem__(self, name: str) -> ManifestEntry:
        try:
            return self.entries[name]
        except KeyError:
            raise KeyError(
                f"dataset {name!r} not found in manifest {self.path} "
                f"(available: {', '.join(sorted(self.entries)) or 'none'})"
            ) from None

    def names(self) -> list[str]:
        return list(self.entries)


def load_manifest(path: str | Path) -> DatasetManifest:
    """Parse an INI manifest; relative data paths resolve against its directory.

    Required keys per section: ``train_path``, ``test_path``, ``main_class``.
    Optional: ``missing_token``, ``expected_features``, ``expected_train_rows``,
    ``expected_test_rows``.
    """
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise DatasetLoadError(f"cannot read manifest {path}: {exc}") from exc
    except configparser.Error as exc:
        raise DatasetLoadError(f"malformed manifest {path}: {exc}") from exc

    base = path.parent
    entries = {}
    for name in parser.sections():
        section = parser[name]
        try:
            train_rel, test_rel = section["train_path"], section["test_path"]
            main_class = section["main_class"]
        except KeyError as exc:
            raise DatasetLoadError(
                f"manifest {path}, section [{name}]: missing required key {exc}"
            ) from None

        def opt_int(key):
            value = section.get(key)
            if value is None:
                return None
            try:
                return int(value)
            except ValueError:
                raise DatasetLoadError(
                    f"manifest {path}, section [{name}]: {key} must be an integer, "
                    f"got {value!r}"
                ) from None

        entries[name] = ManifestEntry(
            name=name,
            train_path=base / train_rel,
            test_path=base / test_rel,
            main_class=main_class,
            missing_token=section.get("missing_token", DEFAULT_MISSING_TOKEN),
            expected_features=opt_int("expected_features"),
            expected_train_rows=opt_int("expected_train_rows"),
            expected_test_rows=opt_int("expected_test_rows"),
        )
    return DatasetManifest(path=path, entries=entries)


def load_from_manifest(manifest: DatasetManifest, name: str) -> tuple[Dataset, Dataset]:
    entry = manifest[name]
    return load_dataset(entry.train_path, entry.test_path, entry.main_class, entry.missing_token)


def validate_against_manifest(
    train: Dataset, test: Dataset, entry: ManifestEntry
) -> list[str]:
    """Shape mismatches between loaded data and manifest expectations.

    Empty list means the datasets match every expectation present.
    """
    report = []
    checks = (
        ("features", entry.expected_features, train.n_features),
        ("train rows", entry.expected_train_rows, train.n_rows),
        ("test rows", entry.expected_test_rows, test.n_rows),
    )
    for what, expected, actual in checks:
        if expected is not None and expected != actual:
            report.append(f"{entry.name}: expected {expected} {what}, loaded {actual}")
    if test.n_features != train.n_features:
        report.append(
            f"{entry.name}: train has {train.n_features} features, test has {test.n_features}"
        )
    return report
