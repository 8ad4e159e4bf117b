# tests/test_training_loop.py

"""
Code file for TestFitLoop.

The scripted network is a single Dense(1,1) fed all-zero inputs, so only the
bias learns. Under full-batch Adam with lr 0.1 the gradient sign never
changes and the bias climbs by 0.1 per epoch.
"""

import unittest

import numpy as np

from mvre.objects.errors import DivergenceError
from mvre.objects.strategy import TrainConfig
from mvre.services.numkit import Dense, Network, Node
from mvre.services.strategies import LoopData, fit_loop
from tests.base_setup import BaseUnitSetup


def bias_only_net() -> Network:
    return Network([Node("output", Dense(1, 1), ("tabular",))], "output", {"tabular": (1,)})


def constant_data(n: int, target: float) -> LoopData:
    return LoopData(np.full(n, target), tabular=np.zeros((n, 1)))


class TestFitLoop(BaseUnitSetup):
    """
    Tests epoch selection, stopping and divergence handling of fit_loop.
    """

    def bias(self, net: Network) -> float:
        return float(net.params["output"]["bias"].data[0])


    def test_best_epoch_is_restored(self):
        """ Validation target 0.3 is closest after epoch 3 of 10 """
        # Vars
        net = bias_only_net()
        config = TrainConfig(lr=0.1, batch=4, max_epochs=10)

        # Test
        result = fit_loop(net, constant_data(4, 10.0), constant_data(2, 0.3), config)

        # Validate
        self.assertEqual(3, result.best_epoch)
        self.assertEqual(10, result.epochs_run)
        self.assertEqual(10, len(result.history))
        self.assertAlmostEqual(0.3, self.bias(net), delta=1e-4)
        losses = [h["val_loss"] for h in result.history]
        self.assertEqual(min(losses), result.best_val_loss)


    def test_monotone_validation_returns_last_epoch(self):
        # Vars
        net = bias_only_net()

        # Test
        result = fit_loop(net, constant_data(4, 10.0), constant_data(2, 10.0),
            TrainConfig(lr=0.1, batch=4, max_epochs=5))

        # Validate
        self.assertEqual(5, result.best_epoch)
        self.assertAlmostEqual(0.5, self.bias(net), delta=1e-4)


    def test_single_epoch(self):
        result = fit_loop(bias_only_net(), constant_data(4, 10.0), constant_data(2, 1.0),
            TrainConfig(lr=0.1, batch=2, max_epochs=1))
        self.assertEqual(1, result.epochs_run)
        self.assertEqual(1, len(result.history))


    def test_patience_stops_early(self):
        """ Best at epoch 3, two stale epochs later the loop stops """
        result = fit_loop(bias_only_net(), constant_data(4, 10.0), constant_data(2, 0.3),
            TrainConfig(lr=0.1, batch=4, max_epochs=10, patience=2))
        self.assertEqual(3, result.best_epoch)
        self.assertEqual(5, result.epochs_run)


    def test_divergence(self):
        with self.assertRaises(DivergenceError):
            fit_loop(bias_only_net(), constant_data(4, 10.0), constant_data(2, 0.3),
                TrainConfig(lr=1e308, batch=4, max_epochs=3))


    def test_determinism(self):
        """ Same seed -> identical history and parameters """
        runs = []
        for _ in range(2):
            # Vars
            rng = np.random.default_rng(0)
            net = Network([Node("output", Dense(3, 1), ("tabular",))], "output", {"tabular": (3,)},
                seed=5)
            X = rng.normal(size=(20, 3))
            train = LoopData(X @ np.array([1.0, -2.0, 0.5]), tabular=X)

            # Test
            result = fit_loop(net, train, train.take(np.arange(5)), TrainConfig(batch=6, max_epochs=4))
            runs.append((result.history, net.parameters()[0].data.tobytes()))

        # Validate
        self.assertEqual(runs[0], runs[1])


if __name__ == "__main__":
    unittest.main()
