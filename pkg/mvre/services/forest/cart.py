# mvre/services/forest/cart.py

"""
CART regression trees grown by greedy variance reduction.
"""

# Default libs
import math
from dataclasses import dataclass
from typing import Any, Union

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import ShapeError, ValidationError


@dataclass
class Leaf:
    value: float


@dataclass
class Split:
    feature: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"


TreeNode = Union[Leaf, Split]


@dataclass(frozen=True)
class TreeParams:
    """
    Growth limits of one tree.

    Attributes:
        max_depth: None grows until the other limits stop it
        min_leaf: minimum number of rows on each side of a split
        max_features: size of the random feature subset tried at every
            node; None means ceil(d / 3)
    """
    max_depth: int | None = 12
    min_leaf: int = 2
    max_features: int | None = None

    def __post_init__(self):
        if self.max_depth is not None and self.max_depth < 0:
            raise ValidationError(f"max_depth must be >= 0, got {self.max_depth}")
        if self.min_leaf < 1:
            raise ValidationError(f"min_leaf must be >= 1, got {self.min_leaf}")
        if self.max_features is not None and self.max_features < 1:
            raise ValidationError(f"max_features must be >= 1, got {self.max_features}")

    def features_per_split(self, d: int) -> int:
        if self.max_features is None:
            return max(1, math.ceil(d / 3))
        return min(self.max_features, d)


def check_xy(X, y=None) -> tuple[np.ndarray, np.ndarray | None]:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValidationError(f"Expected a non-empty 2D feature matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValidationError("Feature matrix contains non-finite values")
    if y is None:
        return X, None
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if y.size != X.shape[0]:
        raise ShapeError(f"X has {X.shape[0]} rows, y has {y.size}")
    if not np.all(np.isfinite(y)):
        raise ValidationError("Targets contain non-finite values")
    return X, y


def _best_split(X: np.ndarray, y: np.ndarray, features: np.ndarray,
                min_leaf: int) -> tuple[int, float] | None:
    """
    Lowest summed child SSE over the candidate features. Candidates are
    midpoints between consecutive distinct sorted values. Features are
    scanned in ascending order and thresholds ascending, and only a strictly
    better score replaces the incumbent.
    """
    n = y.size
    best: tuple[int, float] | None = None
    best_score = math.inf

    for f in features:
        order = np.argsort(X[:, f], kind="stable")
        xs, ys = X[order, f], y[order]

        csum = np.cumsum(ys)
        csum2 = np.cumsum(ys * ys)
        left_n = np.arange(1, n)
        right_n = n - left_n
        left_sse = csum2[:-1] - csum[:-1] ** 2 / left_n
        right_sse = (csum2[-1] - csum2[:-1]) - (csum[-1] - csum[:-1]) ** 2 / right_n
        score = left_sse + right_sse

        valid = (xs[1:] > xs[:-1]) & (left_n >= min_leaf) & (right_n >= min_leaf)
        if not valid.any():
            continue
        score = np.where(valid, score, np.inf)
        i = int(np.argmin(score))
        if score[i] < best_score:
            best_score = float(score[i])
            best = (int(f), float((xs[i] + xs[i + 1]) / 2))

    return best


def fit_tree(X, y, params: TreeParams, rng: np.random.Generator) -> TreeNode:
    """
    Grow one regression tree.

    A node becomes a leaf holding the mean of its targets when it reaches
    max_depth, when its targets are constant, or when no split leaves
    min_leaf rows on both sides.
    """
    X, y = check_xy(X, y)
    d = X.shape[1]
    k = params.features_per_split(d)

    root_slot: list[TreeNode] = [None]
    # (row indices, depth, parent container, key in container)
    stack: list[tuple[np.ndarray, int, Any, Any]] = [(np.arange(y.size), 0, root_slot, 0)]
    while stack:
        rows, depth, parent, key = stack.pop()
        ys = y[rows]
        node: TreeNode = Leaf(float(ys.mean()))

        at_limit = params.max_depth is not None and depth >= params.max_depth
        if not at_limit and rows.size >= 2 * params.min_leaf and np.ptp(ys) > 0:
            features = np.sort(rng.choice(d, size=k, replace=False)) if k < d else np.arange(d)
            found = _best_split(X[rows], ys, features, params.min_leaf)
            if found is not None:
                feature, threshold = found
                goes_left = X[rows, feature] <= threshold
                node = Split(feature, threshold, None, None)
                stack.append((rows[~goes_left], depth + 1, node, "right"))
                stack.append((rows[goes_left], depth + 1, node, "left"))

        if isinstance(parent, list):
            parent[key] = node
        else:
            setattr(parent, key, node)

    return root_slot[0]


def predict_tree(tree: TreeNode, X: np.ndarray) -> np.ndarray:
    """ Route every row to its leaf """
    out = np.empty(X.shape[0])
    stack: list[tuple[TreeNode, np.ndarray]] = [(tree, np.arange(X.shape[0]))]
    while stack:
        node, rows = stack.pop()
        if rows.size == 0:
            continue
        if isinstance(node, Leaf):
            out[rows] = node.value
            continue
        goes_left = X[rows, node.feature] <= node.threshold
        stack.append((node.left, rows[goes_left]))
        stack.append((node.right, rows[~goes_left]))
    return out


def tree_depth(tree: TreeNode) -> int:
    depth, stack = 0, [(tree, 0)]
    while stack:
        node, level = stack.pop()
        depth = max(depth, level)
        if isinstance(node, Split):
            stack.extend([(node.left, level + 1), (node.right, level + 1)])
    return depth


def tree_to_dict(tree: TreeNode) -> dict[str, Any]:
    if isinstance(tree, Leaf):
        return {"value": tree.value}
    return {
        "feature": tree.feature,
        "threshold": tree.threshold,
        "left": tree_to_dict(tree.left),
        "right": tree_to_dict(tree.right),
    }


def tree_from_dict(d: dict[str, Any]) -> TreeNode:
    if "value" in d:
        return Leaf(float(d["value"]))
    return Split(int(d["feature"]), float(d["threshold"]),
        tree_from_dict(d["left"]), tree_from_dict(d["right"]))
