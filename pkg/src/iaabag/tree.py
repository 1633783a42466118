"""Binary CART decision tree restricted to a caller-supplied feature set.

Grown by greedy Gini minimisation; deterministic by construction.  Candidate
thresholds sit at midpoints between consecutive distinct sorted feature
values, samples with value == threshold go to the right branch, and ties
between equally good splits resolve to the lowest feature index and then the
lowest threshold.  Leaves keep raw class counts so the tree can report the
fraction of main-class (label 1) training samples reached by a query point.

The growing and prediction loops are compiled with numba; the first call in
a process pays the JIT cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numba import njit

__all__ = ["TreeParams", "DecisionTree", "train"]

_NO_DEPTH_LIMIT = np.iinfo(np.int64).max


@dataclass(frozen=True)
class TreeParams:
    """Growth limits.  max_depth=None grows until purity or sample floor."""

    min_samples_split: int = 2
    max_depth: int | None = None

    def __post_init__(self):
        if self.min_samples_split < 2:
            raise ValueError(f"min_samples_split must be >= 2, got {self.min_samples_split}")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {self.max_depth}")


@njit(cache=True, nogil=True)
def _grow(X, y, features, min_samples_split, max_depth):
    """Grow a tree over X[:, features]; returns flat node arrays.

    Node arrays: feature (-1 marks a leaf), threshold, left/right child ids,
    and per-node (main, total) counts.  Children are partitioned in place
    over an index buffer; the stack replaces recursion.
    """
    n_samples = X.shape[0]
    cap = 2 * n_samples + 1
    node_feature = np.full(cap, -1, dtype=np.int64)
    node_threshold = np.zeros(cap, dtype=np.float64)
    node_left = np.full(cap, -1, dtype=np.int64)
    node_right = np.full(cap, -1, dtype=np.int64)
    node_main = np.zeros(cap, dtype=np.int64)
    node_total = np.zeros(cap, dtype=np.int64)

    idx = np.arange(n_samples)
    buf = np.empty(n_samples, dtype=np.int64)

    # stack rows: (node_id, start, end, depth) over idx[start:end]
    stack = np.empty((64 + n_samples, 4), dtype=np.int64)
    stack[0, 0] = 0
    stack[0, 1] = 0
    stack[0, 2] = n_samples
    stack[0, 3] = 0
    top = 1
    n_nodes = 1

    while top > 0:
        top -= 1
        node_id, start, end, depth = stack[top, 0], stack[top, 1], stack[top, 2], stack[top, 3]
        size = end - start

        n_main = 0
        for k in range(start, end):
            n_main += y[idx[k]]
        node_main[node_id] = n_main
        node_total[node_id] = size

        if n_main == 0 or n_main == size or size < min_samples_split or depth >= max_depth:
            continue

        parent_gini = 1.0 - (n_main * n_main + (size - n_main) * (size - n_main)) / (size * size)

        best_gain = 0.0
        best_feature = -1
        best_threshold = 0.0

        for f in features:
            values = np.empty(size, dtype=np.float64)
            labels = np.empty(size, dtype=np.int64)
            for k in range(size):
                values[k] = X[idx[start + k], f]
            order = np.argsort(values, kind="mergesort")
            for k in range(size):
                labels[k] = y[idx[start + order[k]]]
            values = values[order]

            left_main = 0
            for k in range(size - 1):
                left_main += labels[k]
                if values[k] == values[k + 1]:
                    continue
                n_left = k + 1
                n_right = size - n_left
                right_main = n_main - left_main
                gini_left = 1.0 - (
                    left_main * left_main + (n_left - left_main) * (n_left - left_main)
                ) / (n_left * n_left)
                gini_right = 1.0 - (
                    right_main * right_main + (n_right - right_main) * (n_right - right_main)
                ) / (n_right * n_right)
                gain = parent_gini - (n_left * gini_left + n_right * gini_right) / size
                if gain > best_gain:
                    best_gain = gain
                    best_feature = f
                    best_threshold = 0.5 * (values[k] + values[k + 1])

        if best_feature < 0:
            continue

        # partition idx[start:end]: value < threshold left, >= threshold right
        n_left = 0
        n_right = 0
        for k in range(start, end):
            if X[idx[k], best_feature] < best_threshold:
                buf[start + n_left] = idx[k]
                n_left += 1
            else:
                n_right += 1
                buf[end - n_right] = idx[k]
        if n_left == 0 or n_right == 0:
            # midpoint of two adjacent floats rounded onto one of them
            continue
        for k in range(start, end):
            idx[k] = buf[k]

        left_id = n_nodes
        right_id = n_nodes + 1
        n_nodes += 2
        node_feature[node_id] = best_feature
        node_threshold[node_id] = best_threshold
        node_left[node_id] = left_id
        node_right[node_id] = right_id

        stack[top, 0] = left_id
        stack[top, 1] = start
        stack[top, 2] = start + n_left
        stack[top, 3] = depth + 1
        top += 1
        stack[top, 0] = right_id
        stack[top, 1] = start + n_left
        stack[top, 2] = end
        stack[top, 3] = depth + 1
        top += 1

    return (
        node_feature[:n_nodes],
        node_threshold[:n_nodes],
        node_left[:n_nodes],
        node_right[:n_nodes],
        node_main[:n_nodes],
        node_total[:n_nodes],
    )


@njit(cache=True, nogil=True)
def _predict_proba(X, node_feature, node_threshold, node_left, node_right, node_main, node_total):
    out = np.empty(X.shape[0], dtype=np.float64)
    for i in range(X.shape[0]):
        node = 0
        while node_feature[node] >= 0:
            if X[i, node_feature[node]] < node_threshold[node]:
                node = node_left[node]
            else:
                node = node_right[node]
        out[i] = node_main[node] / node_total[node]
    return out


class DecisionTree:
    """Trained tree.  Immutable once built; safe to share across threads."""

    def __init__(self, nodes, feature_mask: frozenset[int], n_features: int, params: TreeParams):
        self._nodes = nodes
        self.feature_mask = feature_mask
        self.n_features = n_features
        self.params = params
        for arr in nodes:
            arr.setflags(write=False)

    @property
    def n_nodes(self) -> int:
        return len(self._nodes[0])

    def predict_proba(self, sample: np.ndarray) -> float | np.ndarray:
        """Main-class training fraction at the leaf each sample reaches.

        Accepts one sample (1-D, returns a float) or a sample matrix (2-D,
        returns a vector).
        """
        x = np.asarray(sample, dtype=np.float64)
        single = x.ndim == 1
        if single:
            x = x.reshape(1, -1)
        if x.ndim != 2 or x.shape[1] != self.n_features:
            raise ValueError(
                f"sample width {x.shape[-1] if x.ndim else '?'} does not match "
                f"training width {self.n_features}"
            )
        probs = _predict_proba(np.ascontiguousarray(x), *self._nodes)
        return float(probs[0]) if single else probs

    def predict_label(self, sample: np.ndarray) -> int | np.ndarray:
        """1 (main class) where the leaf fraction reaches 0.5, else 0."""
        proba = self.predict_proba(sample)
        if isinstance(proba, float):
            return int(proba >= 0.5)
        return (proba >= 0.5).astype(np.int64)

    def features_used(self) -> set[int]:
        """Feature indices actually tested by internal nodes."""
        node_feature = self._nodes[0]
        return set(int(f) for f in node_feature[node_feature >= 0])

    def thresholds(self) -> np.ndarray:
        """Per-node split thresholds (read-only); leaf positions hold 0."""
        return self._nodes[1]


def train(
    samples: np.ndarray,
    labels: np.ndarray,
    feature_mask: Iterable[int],
    params: TreeParams = TreeParams(),
) -> DecisionTree:
    """Fit a CART tree on ``samples`` using only the features in ``feature_mask``.

    Labels must be binary with 1 marking the main class.  Growing stops at
    pure nodes, nodes below ``min_samples_split``, nodes at ``max_depth``,
    and nodes where no candidate split strictly reduces Gini impurity.
    """
    X = np.ascontiguousarray(samples, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("training samples must be a non-empty 2-D matrix")
    y = np.asarray(labels)
    if y.shape != (X.shape[0],):
        raise ValueError(f"labels shape {y.shape} does not match {X.shape[0]} samples")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be 0 (other) or 1 (main)")

    if isinstance(feature_mask, np.ndarray) and feature_mask.dtype == np.bool_:
        feature_mask = np.flatnonzero(feature_mask)
    mask = frozenset(int(f) for f in feature_mask)
    if not mask:
        raise ValueError("feature_mask must name at least one feature")
    if min(mask) < 0 or max(mask) >= X.shape[1]:
        raise ValueError(f"feature_mask {sorted(mask)} out of bounds for width {X.shape[1]}")

    features = np.array(sorted(mask), dtype=np.int64)
    max_depth = _NO_DEPTH_LIMIT if params.max_depth is None else params.max_depth
    nodes = _grow(X, y.astype(np.int64), features, params.min_samples_split, max_depth)
    return DecisionTree(nodes, mask, X.shape[1], params)
