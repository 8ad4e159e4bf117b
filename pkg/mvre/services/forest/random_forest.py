# mvre/services/forest/random_forest.py

"""
Bagged ensemble of CART regression trees with feature subsampling.
"""

# Default libs
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import ArtifactMismatchError, ShapeError, ValidationError
from .cart import TreeNode, TreeParams, check_xy, fit_tree, predict_tree, tree_from_dict, tree_to_dict


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 50
    max_depth: int | None = 12
    min_leaf: int = 2
    max_features: int | None = None

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValidationError(f"n_trees must be >= 1, got {self.n_trees}")

    @property
    def tree(self) -> TreeParams:
        return TreeParams(self.max_depth, self.min_leaf, self.max_features)


@dataclass
class ForestModel:
    params: ForestParams
    seed: int
    n_features: int
    trees: list[TreeNode] = field(default_factory=list)


def _fit_one(X: np.ndarray, y: np.ndarray, params: ForestParams, seed: int, index: int) -> TreeNode:
    # Each tree owns its RNG stream, so parallel and serial fits agree bit for bit
    rng = np.random.default_rng(seed ^ index)
    rows = rng.integers(0, y.size, size=y.size)
    return fit_tree(X[rows], y[rows], params.tree, rng)


def fit_forest(X, y, params: ForestParams, seed: int, jobs: int = 1) -> ForestModel:
    """
    Fit `n_trees` trees, each on a bootstrap sample drawn with the RNG
    seeded by seed XOR tree index.

    Args:
        jobs: number of threads fitting trees concurrently
    """
    X, y = check_xy(X, y)
    indices = range(params.n_trees)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            trees = list(pool.map(lambda i: _fit_one(X, y, params, seed, i), indices))
    else:
        trees = [_fit_one(X, y, params, seed, i) for i in indices]
    return ForestModel(params=params, seed=seed, n_features=X.shape[1], trees=trees)


def predict(model: ForestModel, X) -> np.ndarray:
    """ Mean of the per-tree predictions """
    X, _ = check_xy(X)
    if X.shape[1] != model.n_features:
        raise ShapeError(f"Forest was fit on {model.n_features} features, got {X.shape[1]}")
    return np.mean([predict_tree(tree, X) for tree in model.trees], axis=0)


def forest_to_dict(model: ForestModel) -> dict[str, Any]:
    return {
        "n_trees": model.params.n_trees,
        "max_depth": model.params.max_depth,
        "min_leaf": model.params.min_leaf,
        "max_features": model.params.max_features,
        "seed": model.seed,
        "n_features": model.n_features,
        "trees": [tree_to_dict(t) for t in model.trees],
    }


def forest_from_dict(d: dict[str, Any]) -> ForestModel:
    try:
        params = ForestParams(d["n_trees"], d["max_depth"], d["min_leaf"], d["max_features"])
        trees = [tree_from_dict(t) for t in d["trees"]]
        model = ForestModel(params=params, seed=int(d["seed"]), n_features=int(d["n_features"]),
            trees=trees)
    except (KeyError, TypeError) as e:
        raise ArtifactMismatchError(f"Malformed forest description: {e}") from e
    if len(model.trees) != params.n_trees:
        raise ArtifactMismatchError(f"Forest lists {len(model.trees)} trees, "
            f"expected {params.n_trees}")
    return model


def save_forest(path: Path, model: ForestModel) -> None:
    Path(path).write_text(json.dumps(forest_to_dict(model)) + "\n", encoding="utf-8")


def load_forest(path: Path) -> ForestModel:
    try:
        return forest_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
    except (OSError, json.JSONDecodeError) as e:
        raise ArtifactMismatchError(f"Could not read forest {path}: {e}") from e
