# tests/test_benchmark.py

"""
Code file for TestStrategyOrdering, TestBoostingRecovery and
TestConcatenationRobustness.

These train every strategy on the full-size synthetic benchmark and take
several minutes. They only run with MVRE_RUN_BENCH=1.
"""

import os
import unittest
from dataclasses import replace

import numpy as np

from mvre.constants.constant import SATELLITE_COEFFICIENT
from mvre.objects.strategy import StrategyId, TrainConfig
from mvre.objects.synth import SynthConfig
from mvre.services.evaluation import evaluate
from mvre.services.strategies import encode_view, extract_coefficients, train_strategy
from mvre.services.synthbench import generate
from tests.base_setup import BaseUnitSetup


RUN_BENCH = os.environ.get("MVRE_RUN_BENCH") == "1"
SEEDS = (7, 8, 9)


def bench_config(seed: int) -> TrainConfig:
    return TrainConfig(seed=seed, max_epochs=30, patience=6, batch=32, penultimate=8,
        branch_width=32, image_size=32, n_trees=30)


def strategy_maes(data, seed: int, strategies) -> dict[StrategyId, float]:
    """ USD test MAE of every strategy on one seed """
    ds, test_records = BaseUnitSetup.dataset(data, seed=seed)
    test = encode_view(test_records, ds.schema, ds.stats, data.images)
    config = bench_config(seed)
    return {s: evaluate(train_strategy(s, ds, config), test).mae for s in strategies}


@unittest.skipUnless(RUN_BENCH, "set MVRE_RUN_BENCH=1 to run the benchmark")
class TestStrategyOrdering(BaseUnitSetup):
    """
    Tests the relative accuracy of the six strategies on images that carry
    about a third of the log-price variance, with the interaction term on.
    """

    def test_ordering_holds_for_every_seed(self):
        for seed in SEEDS:
            # Vars
            data = generate(SynthConfig(n=2000, image_size=32, interaction=True, seed=seed))

            # Test
            maes = strategy_maes(data, seed, list(StrategyId))

            # Validate
            base = maes[StrategyId.BASELINE]
            msg = f"seed {seed}: " + ", ".join(f"{s.value} {v:,.0f}" for s, v in maes.items())
            self.assertGreater(maes[StrategyId.M1_MULTIKERNEL], base, msg=msg)
            self.assertLess(maes[StrategyId.M2_CONCAT_RF], base, msg=msg)
            self.assertLess(maes[StrategyId.M4_HYBRID], base, msg=msg)
            self.assertLessEqual(maes[StrategyId.M5_BLACKBOX], maes[StrategyId.M4_HYBRID], msg=msg)
            self.assertLessEqual(maes[StrategyId.M5_BLACKBOX], 0.95 * base, msg=msg)


@unittest.skipUnless(RUN_BENCH, "set MVRE_RUN_BENCH=1 to run the benchmark")
class TestBoostingRecovery(BaseUnitSetup):
    """
    Tests the boosted strategy when the price depends on the image only.
    """

    def test_satellite_coefficient_near_one(self):
        # Vars
        config = SynthConfig(n=2000, image_size=32, beta=(0.0,) * 11, gamma=0.7, sigma=0.05)
        data = generate(config)
        ds, test_records = self.dataset(data)
        test = encode_view(test_records, ds.schema, ds.stats, data.images)
        train_config = bench_config(7)

        # Test
        boosted = train_strategy(StrategyId.M3_BOOSTED, ds, train_config)
        baseline = train_strategy(StrategyId.BASELINE, ds, train_config)

        # Validate
        coefficient = extract_coefficients(boosted).get(SATELLITE_COEFFICIENT).value
        self.assertGreaterEqual(coefficient, 0.8)
        self.assertLessEqual(coefficient, 1.2)
        self.assertLess(evaluate(boosted, test).mae, 0.5 * evaluate(baseline, test).mae)


@unittest.skipUnless(RUN_BENCH, "set MVRE_RUN_BENCH=1 to run the benchmark")
class TestConcatenationRobustness(BaseUnitSetup):
    """
    Tests the feature-extraction strategy with every tabular column duplicated.
    """

    def test_duplicated_columns(self):
        # Vars
        data = generate(SynthConfig(n=2000, image_size=32, seed=7))
        ds, test_records = self.dataset(data)
        test = encode_view(test_records, ds.schema, ds.stats, data.images)
        twice = lambda view: replace(view, X=np.hstack([view.X, view.X]))
        doubled = replace(ds, columns=ds.columns + [f"{c}_copy" for c in ds.columns],
            train=twice(ds.train), val=twice(ds.val))

        # Test
        plain = evaluate(train_strategy(StrategyId.M2_CONCAT_RF, ds, bench_config(7)), test).mae
        noisy = evaluate(train_strategy(StrategyId.M2_CONCAT_RF, doubled, bench_config(7)),
            twice(test)).mae

        # Validate
        self.assertLessEqual(abs(noisy - plain), 0.1 * plain, msg=f"{plain:,.0f} vs {noisy:,.0f}")


if __name__ == "__main__":
    unittest.main()
