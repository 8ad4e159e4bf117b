# tests/test_strategies.py

"""
Code file for TestCatalog, TestStrategyContracts, TestArtifactStore and
TestReductions.

Everything runs on small synthetic datasets with a few epochs, so these
tests check contracts and reductions rather than accuracy. Accuracy
orderings live in test_benchmark.
"""

import json
import unittest
from dataclasses import replace
from unittest import mock

import numpy as np

from mvre.constants.constant import COEFFICIENTS_FILE, MANIFEST_FILE, SATELLITE_COEFFICIENT
from mvre.objects.errors import (ArtifactMismatchError, MissingImagesError, NotInterpretableError,
    UntrainedError, ValidationError)
from mvre.objects.strategy import StrategyId, TrainConfig
from mvre.objects.synth import SynthConfig
from mvre.services.evaluation import mae
from mvre.services.forest import ForestParams, fit_forest, predict
from mvre.services.strategies import (train_strategy, train_baseline, train_m1_multikernel,
    train_m2_concat_rf, train_m3_boosted, train_m4_hybrid, train_m5_blackbox, predict_log,
    kernel_predictions, extract_image_features, extract_coefficients, fit_linear_regression,
    save_artifact, load_artifact, read_manifest, find_artifacts, encode_view, build_cnn, OUTPUT)
from mvre.services.synthbench import bayes_mae, generate
from tests.base_setup import BaseUnitSetup


class TestCatalog(BaseUnitSetup):
    """
    Trains every strategy once on a shared small dataset.
    """

    @classmethod
    def setUpClass(cls):
        cls.data = cls.synth()
        cls.ds, test_records = cls.dataset(cls.data)
        cls.test = encode_view(test_records, cls.ds.schema, cls.ds.stats, cls.data.images)
        cls.config = cls.fast_config()
        cls.artifacts = {s: train_strategy(s, cls.ds, cls.config) for s in StrategyId}


    def test_every_strategy_predicts(self):
        for strategy, artifact in self.artifacts.items():
            # Test
            pred = predict_log(artifact, self.test)

            # Validate
            self.assertEqual((self.test.n,), pred.shape, msg=strategy.value)
            self.assertTrue(np.all(np.isfinite(pred)), msg=strategy.value)
            self.assertEqual(f"{strategy.value}_seed7", artifact.name)


    def test_predictions_are_pure(self):
        for strategy, artifact in self.artifacts.items():
            first = predict_log(artifact, self.test)
            second = predict_log(artifact, self.test)
            self.assertEqual(first.tobytes(), second.tobytes(), msg=strategy.value)


    def test_multikernel_is_equal_average(self):
        # Vars
        artifact = self.artifacts[StrategyId.M1_MULTIKERNEL]

        # Test
        kernels = kernel_predictions(artifact, self.test)

        # Validate
        self.assertAllClose(0.5 * kernels["tabular"] + 0.5 * kernels["image"],
            predict_log(artifact, self.test), atol=1e-12)


    def test_image_features_shape(self):
        """ Penultimate width 4 and 5 images -> 5 x 4; identical images -> identical rows """
        # Vars
        artifact = self.artifacts[StrategyId.M2_CONCAT_RF]
        images = np.stack([self.test.images[0]] * 2 + list(self.test.images[1:4]))

        # Test
        features = extract_image_features(artifact, images)

        # Validate
        self.assertEqual((5, 4), features.shape)
        self.assertEqual(features[0].tobytes(), features[1].tobytes())
        self.assertTrue(np.all(features >= 0))


    def test_coefficients(self):
        baseline = extract_coefficients(self.artifacts[StrategyId.BASELINE])
        self.assertEqual("const", baseline.coefficients[0].name)
        self.assertTrue(all(c.std_error is not None for c in baseline.coefficients))

        boosted = extract_coefficients(self.artifacts[StrategyId.M3_BOOSTED])
        self.assertEqual("regression", boosted.source)

        hybrid = extract_coefficients(self.artifacts[StrategyId.M4_HYBRID])
        self.assertIsNotNone(hybrid.get(SATELLITE_COEFFICIENT))
        self.assertEqual(len(self.ds.columns) + 2, len(hybrid.coefficients))

        for strategy in (StrategyId.M1_MULTIKERNEL, StrategyId.M2_CONCAT_RF, StrategyId.M5_BLACKBOX):
            with self.assertRaises(NotInterpretableError, msg=strategy.value):
                extract_coefficients(self.artifacts[strategy])


    def test_boosting_residual_notes(self):
        """ OLS residuals average 0 and stage 3 never fits worse than stage 1 """
        notes = self.artifacts[StrategyId.M3_BOOSTED].notes
        self.assertAlmostEqual(0.0, notes["stage1_residual_mean"], delta=1e-9)
        self.assertLessEqual(notes["stage3_residual_var"], notes["stage1_residual_var"] + 1e-12)
        self.assertGreater(notes["stage1_residual_var"], 0.0)


    def test_history_marks_best_epoch(self):
        history = self.artifacts[StrategyId.M5_BLACKBOX].history["blackbox"]
        self.assertEqual(3, len(history))
        self.assertEqual(1, sum(1 for h in history if h["best"]))


class TestStrategyContracts(BaseUnitSetup):
    """
    Tests preconditions and small hand-checkable behaviors.
    """

    def test_image_strategies_need_images(self):
        # Vars
        ds, _ = self.dataset(self.synth(n=60), with_images=False)
        config = self.fast_config()

        # Test & Validate
        for trainer in (train_m1_multikernel, train_m2_concat_rf, train_m5_blackbox):
            with self.assertRaises(MissingImagesError, msg=trainer.__name__):
                trainer(ds, config)
        self.assertIsNotNone(train_m4_hybrid(ds, config, image_branch=False))


    def test_multikernel_stand_ins(self):
        """ Tabular kernel at 10, image kernel at 20 -> 15 """
        # Vars
        data = self.synth(n=60)
        ds, test_records = self.dataset(data)
        artifact = train_m1_multikernel(ds, self.fast_config(max_epochs=1))
        fit = artifact.linear["tabular_kernel"]
        fit.weights[:] = 0.0
        fit.weights[0] = 10.0
        cnn = artifact.networks["cnn"]
        cnn.set_param(OUTPUT, "weight", np.zeros(1))
        cnn.set_param(OUTPUT, "bias", np.array([20.0]))

        # Test
        pred = predict_log(artifact, encode_view(test_records, ds.schema, ds.stats, data.images))

        # Validate
        self.assertAllClose(np.full(pred.size, 15.0), pred, atol=1e-12)


    def test_untrained_kernel(self):
        with self.assertRaises(UntrainedError):
            extract_image_features(build_cnn(self.fast_config()), np.zeros((2, 16, 16, 3)))


    def test_constant_target_is_intercept_only(self):
        """ Zero coefficients, no image effect, no noise -> constant log price, MAE 0 """
        # Vars
        config = SynthConfig(n=60, image_size=16, gamma=0.0, sigma=0.0, beta=(0.0,) * 11)
        data = generate(config)
        ds, test_records = self.dataset(data, with_images=False)

        # Test
        artifact = train_baseline(ds, self.fast_config())
        test = encode_view(test_records, ds.schema, ds.stats)

        # Validate
        fit = artifact.linear["regression"]
        self.assertAlmostEqual(12.0, fit.intercept, delta=1e-9)
        self.assertAllClose(np.zeros(fit.weights.size - 1), fit.weights[1:], atol=1e-9)
        self.assertAlmostEqual(0.0, mae(predict_log(artifact, test), test.y), delta=1e-9)


    def test_baseline_reaches_noise_floor(self):
        """ No image signal: baseline test MAE stays within 15% of the Bayes MAE on every seed """
        for seed in (7, 8, 9):
            # Vars
            config = SynthConfig(n=2000, image_size=16, gamma=0.0, sigma=0.1, seed=seed)
            data = generate(config)
            ds, test_records = self.dataset(data, seed=seed, with_images=False)

            # Test
            artifact = train_baseline(ds, self.fast_config(seed=seed))
            test = encode_view(test_records, ds.schema, ds.stats)
            test_mae = mae(predict_log(artifact, test), test.y)

            # Validate
            self.assertLessEqual(test_mae, 1.15 * bayes_mae(config),
                msg=f"seed {seed}: baseline MAE {test_mae:.4f} vs Bayes {bayes_mae(config):.4f}")


    def test_negative_seed(self):
        with self.assertRaises(ValidationError):
            TrainConfig(seed=-1)
        with self.assertRaises(ValidationError):
            SynthConfig(n=20, image_size=16, seed=-1)


class TestArtifactStore(BaseUnitSetup):
    """
    Tests artifact persistence.
    """

    def test_round_trip(self):
        """ A reloaded artifact predicts bit-identically """
        # Vars
        data = self.synth(n=80)
        ds, test_records = self.dataset(data)
        test = encode_view(test_records, ds.schema, ds.stats, data.images)
        config = self.fast_config(max_epochs=2, n_trees=3)

        for strategy in (StrategyId.BASELINE, StrategyId.M2_CONCAT_RF, StrategyId.M3_BOOSTED,
                         StrategyId.M4_HYBRID):
            artifact = train_strategy(strategy, ds, config)
            directory = self.root / artifact.name

            # Test
            save_artifact(artifact, directory, "abc123")
            loaded = load_artifact(directory)

            # Validate
            self.assertEqual(predict_log(artifact, test).tobytes(),
                predict_log(loaded, test).tobytes(), msg=strategy.value)
            self.assertEqual("abc123", read_manifest(directory)["config_digest"])
            self.assertEqual(strategy.interpretable, (directory / COEFFICIENTS_FILE).is_file(),
                msg=strategy.value)

        self.assertEqual(4, len(find_artifacts(self.root)))


    def test_manifest_without_timestamp(self):
        # Vars
        ds, _ = self.dataset(self.synth(n=60), with_images=False)
        artifact = train_baseline(ds, self.fast_config())

        # Test
        save_artifact(artifact, self.root / "a", include_timestamp=False)
        save_artifact(artifact, self.root / "b", include_timestamp=False)

        # Validate
        first = (self.root / "a" / MANIFEST_FILE).read_text(encoding="utf-8")
        self.assertEqual(first, (self.root / "b" / MANIFEST_FILE).read_text(encoding="utf-8"))
        self.assertNotIn("created_at", json.loads(first))


    def test_broken_artifacts(self):
        with self.assertRaises(ArtifactMismatchError):
            load_artifact(self.root)
        with self.assertRaises(ArtifactMismatchError):
            find_artifacts(self.root)
        (self.root / "x").mkdir()
        (self.root / "x" / MANIFEST_FILE).write_text("{not json", encoding="utf-8")
        with self.assertRaises(ArtifactMismatchError):
            load_artifact(self.root / "x")


class TestReductions(BaseUnitSetup):
    """
    Tests what the image strategies reduce to when the images carry nothing.
    """

    def test_hybrid_without_image_branch_is_linear_regression(self):
        """ Image scalar frozen at 0 on noiseless linear data: coefficients match OLS """
        # Vars
        config = SynthConfig(n=200, d_num=3, categoricals={}, gamma=0.0, sigma=0.0,
            image_size=16, seed=3)
        ds, _ = self.dataset(generate(config), with_images=False)
        train_config = self.fast_config(lr=0.005, batch=32, max_epochs=600, image_size=10)
        ols = fit_linear_regression(ds.train.X, ds.train.y, ds.columns)

        # Test
        artifact = train_m4_hybrid(ds, train_config, image_branch=False)
        report = extract_coefficients(artifact)

        # Validate
        learned = report.as_mapping()
        self.assertEqual([SATELLITE_COEFFICIENT], report.dropped)
        gaps = [abs(learned[name] - ols.coefficient(name)) for name in ols.names]
        self.assertLess(max(gaps), 0.05, msg=f"coefficient gaps {gaps}")


    def test_boosting_with_blank_images_keeps_stage_one(self):
        """ Blank tiles -> constant residual prediction -> stage 3 equals stage 1 """
        # Vars
        data = self.synth(n=120)
        ds, _ = self.dataset(data)
        blank = lambda view: replace(view, images=np.zeros_like(view.images))
        ds = replace(ds, train=blank(ds.train), val=blank(ds.val))

        # Test
        artifact = train_m3_boosted(ds, self.fast_config(max_epochs=2))

        # Validate
        stage1, stage3 = artifact.linear["stage1"], artifact.linear["stage3"]
        self.assertIn(SATELLITE_COEFFICIENT, stage3.dropped)
        self.assertIn(SATELLITE_COEFFICIENT, extract_coefficients(artifact).dropped)
        self.assertEqual(stage1.names, stage3.names)
        self.assertAllClose(stage1.weights, stage3.weights, atol=1e-9)
        self.assertAlmostEqual(artifact.notes["stage1_residual_var"],
            artifact.notes["stage3_residual_var"], delta=1e-12)


    def test_boosting_with_exact_residual_has_unit_coefficient(self):
        """ A stage 2 that returns the stage-1 residual itself gets weight 1 in stage 3 """
        # Vars
        data = self.synth(n=120)
        ds, _ = self.dataset(data)
        exact = lambda net, loop, batch=256: loop.y.copy()

        # Test
        with mock.patch("mvre.services.strategies.catalog.predict_batched", exact):
            artifact = train_m3_boosted(ds, self.fast_config(max_epochs=1))

        # Validate
        stage1, stage3 = artifact.linear["stage1"], artifact.linear["stage3"]
        self.assertAlmostEqual(1.0, stage3.coefficient(SATELLITE_COEFFICIENT), delta=1e-6)
        self.assertAllClose(stage1.weights, stage3.weights[:-1], atol=1e-6)
        self.assertLess(artifact.notes["stage3_residual_var"], 1e-12)


    def test_concat_forest_with_zero_image_features_is_tabular_forest(self):
        # Vars
        data = self.synth(n=120)
        ds, test_records = self.dataset(data)
        test = encode_view(test_records, ds.schema, ds.stats, data.images)
        config = self.fast_config(max_epochs=1, max_features=64)
        zeros = lambda net, images, batch=256: np.zeros((len(images), config.penultimate))

        # Test
        with mock.patch("mvre.services.strategies.catalog.extract_image_features", zeros):
            artifact = train_m2_concat_rf(ds, config)
        tabular = fit_forest(ds.train.X, ds.train.y, ForestParams(config.n_trees, config.max_depth,
            config.min_leaf, config.max_features), seed=config.seed)

        # Validate
        design = np.hstack([test.X, np.zeros((test.n, config.penultimate))])
        self.assertEqual(predict(tabular, test.X).tobytes(), predict(artifact.forest, design).tobytes())


    def test_image_features_follow_quality(self):
        """ Once trained on a price driven by the image, some feature tracks q """
        # Vars
        data = generate(SynthConfig(n=300, image_size=16, beta=(0.0,) * 11, gamma=2.0, sigma=0.05))
        ds, test_records = self.dataset(data)
        config = self.fast_config(max_epochs=15, penultimate=8, lr=0.003, batch=32)
        index = {r.record_id: i for i, r in enumerate(data.records)}
        quality = data.quality[[index[r.record_id] for r in test_records]]
        test = encode_view(test_records, ds.schema, ds.stats, data.images)

        # Test
        features = extract_image_features(train_m2_concat_rf(ds, config), test.images)

        # Validate
        live = [j for j in range(features.shape[1]) if np.ptp(features[:, j]) > 0]
        correlations = [abs(np.corrcoef(features[:, j], quality)[0, 1]) for j in live]
        self.assertGreater(max(correlations, default=0.0), 0.3, msg=f"correlations {correlations}")


if __name__ == "__main__":
    unittest.main()
