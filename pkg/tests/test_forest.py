# tests/test_forest.py

"""
Code file for TestTree and TestForest.
"""

import unittest

import numpy as np

from mvre.objects.errors import ShapeError, ValidationError
from mvre.services.forest import (Leaf, Split, TreeParams, fit_tree, predict_tree, tree_depth,
    ForestParams, fit_forest, predict, save_forest, load_forest)
from tests.base_setup import BaseUnitSetup


class TestTree(BaseUnitSetup):
    """
    Tests CART growth on small hand-checkable inputs.
    """

    def test_constant_target_is_one_leaf(self):
        # Vars
        X = np.random.default_rng(0).normal(size=(12, 3))

        # Test
        tree = fit_tree(X, np.full(12, 4.0), TreeParams(), np.random.default_rng(0))

        # Validate
        self.assertEqual(Leaf(4.0), tree)


    def test_two_point_split(self):
        """ X = [[0], [1]], y = [0, 10] -> threshold 0.5, leaves 0 and 10 """
        # Test
        tree = fit_tree([[0.0], [1.0]], [0.0, 10.0], TreeParams(max_depth=1, min_leaf=1),
            np.random.default_rng(0))

        # Validate
        self.assertIsInstance(tree, Split)
        self.assertEqual((0, 0.5), (tree.feature, tree.threshold))
        self.assertEqual(Leaf(0.0), tree.left)
        self.assertEqual(Leaf(10.0), tree.right)


    def test_memorization(self):
        """ Unbounded depth with min_leaf 1 has zero training error """
        # Vars
        rng = np.random.default_rng(5)
        X, y = rng.uniform(size=(20, 3)), rng.normal(size=20)

        # Test
        tree = fit_tree(X, y, TreeParams(max_depth=None, min_leaf=1), rng)

        # Validate
        self.assertAllClose(y, predict_tree(tree, X), atol=1e-12)


    def test_depth_limit(self):
        rng = np.random.default_rng(6)
        X, y = rng.uniform(size=(64, 2)), rng.normal(size=64)
        tree = fit_tree(X, y, TreeParams(max_depth=3, min_leaf=1), rng)
        self.assertLessEqual(tree_depth(tree), 3)


    def test_min_leaf_blocks_split(self):
        tree = fit_tree([[0.0], [1.0], [2.0]], [0.0, 1.0, 2.0], TreeParams(min_leaf=2),
            np.random.default_rng(0))
        self.assertEqual(Leaf(1.0), tree)


    def test_invalid_inputs(self):
        with self.assertRaises(ShapeError):
            fit_tree([[0.0], [1.0]], [1.0], TreeParams(), np.random.default_rng(0))
        with self.assertRaises(ValidationError):
            fit_tree([[np.nan]], [1.0], TreeParams(), np.random.default_rng(0))
        with self.assertRaises(ValidationError):
            TreeParams(min_leaf=0)


class TestForest(BaseUnitSetup):
    """
    Tests bagging, determinism and persistence of the forest.
    """

    def setUp(self):
        super().setUp()
        rng = np.random.default_rng(21)
        self.X = rng.uniform(size=(80, 4))
        self.y = 3 * self.X[:, 0] - 2 * self.X[:, 1] ** 2 + rng.normal(scale=0.05, size=80)


    def test_single_tree_reduction(self):
        """ One tree equals fit_tree on the same bootstrap sample and RNG stream """
        # Vars
        params = ForestParams(n_trees=1, max_depth=None, min_leaf=1)
        rng = np.random.default_rng(13 ^ 0)
        rows = rng.integers(0, 80, size=80)
        tree = fit_tree(self.X[rows], self.y[rows], params.tree, rng)

        # Test
        model = fit_forest(self.X, self.y, params, seed=13)

        # Validate
        self.assertAllClose(predict_tree(tree, self.X), predict(model, self.X), atol=0)


    def test_determinism_and_parallel_agreement(self):
        # Vars
        params = ForestParams(n_trees=6, max_depth=6)

        # Test
        first = predict(fit_forest(self.X, self.y, params, seed=3), self.X)
        again = predict(fit_forest(self.X, self.y, params, seed=3), self.X)
        threaded = predict(fit_forest(self.X, self.y, params, seed=3, jobs=3), self.X)

        # Validate
        self.assertEqual(first.tobytes(), again.tobytes())
        self.assertEqual(first.tobytes(), threaded.tobytes())


    def test_fits_signal(self):
        model = fit_forest(self.X, self.y, ForestParams(n_trees=20), seed=1)
        mae = float(np.mean(np.abs(predict(model, self.X) - self.y)))
        baseline = float(np.mean(np.abs(self.y - self.y.mean())))
        self.assertLess(mae, 0.5 * baseline)


    def test_predictions_stay_in_target_range(self):
        """ Leaves average training targets, so even far-off inputs stay inside [min y, max y] """
        model = fit_forest(self.X, self.y, ForestParams(n_trees=8), seed=2)
        far = np.random.default_rng(5).uniform(-5.0, 5.0, size=(50, 4))
        pred = predict(model, far)
        self.assertTrue(np.all(pred >= self.y.min() - 1e-12))
        self.assertTrue(np.all(pred <= self.y.max() + 1e-12))


    def test_save_and_load(self):
        # Vars
        model = fit_forest(self.X, self.y, ForestParams(n_trees=3, max_depth=4), seed=9)
        path = self.root / "forest.json"

        # Test
        save_forest(path, model)
        loaded = load_forest(path)

        # Validate
        self.assertAllClose(predict(model, self.X), predict(loaded, self.X), atol=0)


    def test_feature_count_mismatch(self):
        model = fit_forest(self.X, self.y, ForestParams(n_trees=2), seed=0)
        with self.assertRaises(ShapeError):
            predict(model, self.X[:, :3])


if __name__ == "__main__":
    unittest.main()
