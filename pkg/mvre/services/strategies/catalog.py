# mvre/services/strategies/catalog.py

"""
Trainers of the six strategies. Every trainer works in log-price space on a
StrategyDataset and returns a TrainedArtifact.
"""

# Default libs
from typing import Callable

# Dependencies
import numpy as np

# Deps from this project
from ...constants.constant import SATELLITE_COEFFICIENT
from ...objects.strategy import StrategyId, TrainConfig
from ...utilities.logging_utility import Logger
from ..forest import ForestParams, fit_forest
from ..numkit import Network
from .architectures import (build_blackbox, build_cnn, build_hybrid, disable_image_branch,
    warm_start)
from .artifact import TrainedArtifact
from .dataset import StrategyDataset
from .linear_regression import fit_linear_regression, predict_linear
from .prediction import boosted_design, extract_image_features
from .training_loop import FitResult, LoopData, fit_loop, predict_batched


def _artifact(strategy: StrategyId, ds: StrategyDataset, config: TrainConfig, **parts) -> TrainedArtifact:
    return TrainedArtifact(strategy=strategy, config=config, schema=ds.schema,
        columns=list(ds.columns), stats=ds.stats, split_id=ds.split_id, **parts)


def _log(logger: Logger | None, level: int, message: str) -> None:
    if logger is not None:
        logger.log(level, message)


def _train_cnn(ds: StrategyDataset, y_train: np.ndarray, y_val: np.ndarray, config: TrainConfig,
               logger: Logger | None, label: str) -> tuple[Network, FitResult]:
    """ Image-only regressor on the given targets, output bias started at their mean """
    images = ds.train.require_images(label)
    val_images = ds.val.require_images(label)
    net = warm_start(build_cnn(config), float(np.mean(y_train)))
    _log(logger, Logger.DEBUG, f"{label}: {net.param_count()} parameters")
    result = fit_loop(net, LoopData(y_train, image=images), LoopData(y_val, image=val_images),
        config, logger, label)
    return net, result


def _history(result: FitResult) -> list[dict]:
    return [dict(h, best=(h["epoch"] == result.best_epoch)) for h in result.history]


def train_baseline(ds: StrategyDataset, config: TrainConfig,
                   logger: Logger | None = None) -> TrainedArtifact:
    """ Hedonic regression of log price on the encoded tabular features """
    fit = fit_linear_regression(ds.train.X, ds.train.require_target(), ds.columns)
    if fit.dropped:
        _log(logger, Logger.INFO, f"baseline: dropped redundant columns {fit.dropped}")
    return _artifact(StrategyId.BASELINE, ds, config, linear={"regression": fit})


def train_m1_multikernel(ds: StrategyDataset, config: TrainConfig,
                         logger: Logger | None = None) -> TrainedArtifact:
    """
    Two independent kernels on log price, a tabular regression and an image
    CNN, averaged with fixed equal weights.
    """
    y, y_val = ds.train.require_target(), ds.val.require_target()
    ds.train.require_images(StrategyId.M1_MULTIKERNEL.value)
    tabular = fit_linear_regression(ds.train.X, y, ds.columns)
    cnn, result = _train_cnn(ds, y, y_val, config, logger, "m1 image kernel")
    return _artifact(StrategyId.M1_MULTIKERNEL, ds, config,
        linear={"tabular_kernel": tabular}, networks={"cnn": cnn},
        history={"cnn": _history(result)}, notes={"kernel_weights": [0.5, 0.5]})


def train_m2_concat_rf(ds: StrategyDataset, config: TrainConfig,
                       logger: Logger | None = None, jobs: int = 1) -> TrainedArtifact:
    """
    CNN on log price; its penultimate activations joined with the tabular
    features feed a random forest on log price.
    """
    y, y_val = ds.train.require_target(), ds.val.require_target()
    cnn, result = _train_cnn(ds, y, y_val, config, logger, "m2 feature extractor")

    features = extract_image_features(cnn, ds.train.images)
    design = np.hstack([ds.train.X, features])
    params = ForestParams(config.n_trees, config.max_depth, config.min_leaf, config.max_features)
    _log(logger, Logger.INFO, f"m2: fitting {params.n_trees} trees on {design.shape[1]} columns")
    forest = fit_forest(design, y, params, seed=config.seed, jobs=jobs)

    return _artifact(StrategyId.M2_CONCAT_RF, ds, config, networks={"cnn": cnn}, forest=forest,
        history={"cnn": _history(result)},
        notes={"image_features": int(features.shape[1])})


def train_m3_boosted(ds: StrategyDataset, config: TrainConfig,
                     logger: Logger | None = None) -> TrainedArtifact:
    """
    Stage 1: regression on log price. Stage 2: CNN predicting the stage-1
    log residual from the image. Stage 3: regression of log price on the
    tabular features plus the stage-2 prediction ("satellite_image").
    """
    y, y_val = ds.train.require_target(), ds.val.require_target()
    ds.train.require_images(StrategyId.M3_BOOSTED.value)

    stage1 = fit_linear_regression(ds.train.X, y, ds.columns)
    residual = y - predict_linear(stage1, ds.train.X)
    val_residual = y_val - predict_linear(stage1, ds.val.X)

    cnn, result = _train_cnn(ds, residual, val_residual, config, logger, "m3 residual CNN")
    predicted = predict_batched(cnn, LoopData(residual, image=ds.train.images))

    stage3 = fit_linear_regression(boosted_design(ds.train.X, predicted), y,
        list(ds.columns) + [SATELLITE_COEFFICIENT])
    if SATELLITE_COEFFICIENT in stage3.dropped:
        _log(logger, Logger.WARNING, "m3: residual prediction is constant, "
            f"'{SATELLITE_COEFFICIENT}' dropped from stage 3")

    stage3_residual = y - predict_linear(stage3, boosted_design(ds.train.X, predicted))
    return _artifact(StrategyId.M3_BOOSTED, ds, config,
        linear={"stage1": stage1, "stage3": stage3}, networks={"cnn": cnn},
        history={"cnn": _history(result)},
        notes={
            "stage1_residual_mean": float(np.mean(residual)),
            "stage1_residual_var": float(np.var(residual)),
            "stage3_residual_var": float(np.var(stage3_residual)),
        })


def train_m4_hybrid(ds: StrategyDataset, config: TrainConfig, logger: Logger | None = None,
                    image_branch: bool = True) -> TrainedArtifact:
    """
    End-to-end hybrid network. With image_branch False the image scalar is
    pinned at 0, the network reduces to a linear regression and no images
    are needed.
    """
    y, y_val = ds.train.require_target(), ds.val.require_target()
    size = config.image_size
    if image_branch:
        images = ds.train.require_images(StrategyId.M4_HYBRID.value)
        val_images = ds.val.require_images(StrategyId.M4_HYBRID.value)
    else:
        images = np.zeros((ds.train.n, size, size, 3))
        val_images = np.zeros((ds.val.n, size, size, 3))

    net = warm_start(build_hybrid(ds.train.X.shape[1], config), float(np.mean(y)))
    if not image_branch:
        disable_image_branch(net)
    result = fit_loop(net, LoopData(y, ds.train.X, images), LoopData(y_val, ds.val.X, val_images),
        config, logger, "m4 hybrid")
    return _artifact(StrategyId.M4_HYBRID, ds, config, networks={"hybrid": net},
        history={"hybrid": _history(result)}, notes={"image_branch": image_branch})


def train_m5_blackbox(ds: StrategyDataset, config: TrainConfig,
                      logger: Logger | None = None) -> TrainedArtifact:
    """ Fully nonlinear multi-view network """
    y, y_val = ds.train.require_target(), ds.val.require_target()
    images = ds.train.require_images(StrategyId.M5_BLACKBOX.value)
    val_images = ds.val.require_images(StrategyId.M5_BLACKBOX.value)
    net = warm_start(build_blackbox(ds.train.X.shape[1], config), float(np.mean(y)))
    result = fit_loop(net, LoopData(y, ds.train.X, images), LoopData(y_val, ds.val.X, val_images),
        config, logger, "m5 black box")
    return _artifact(StrategyId.M5_BLACKBOX, ds, config, networks={"blackbox": net},
        history={"blackbox": _history(result)})


TRAINERS: dict[StrategyId, Callable[..., TrainedArtifact]] = {
    StrategyId.BASELINE: train_baseline,
    StrategyId.M1_MULTIKERNEL: train_m1_multikernel,
    StrategyId.M2_CONCAT_RF: train_m2_concat_rf,
    StrategyId.M3_BOOSTED: train_m3_boosted,
    StrategyId.M4_HYBRID: train_m4_hybrid,
    StrategyId.M5_BLACKBOX: train_m5_blackbox,
}


def train_strategy(strategy: StrategyId, ds: StrategyDataset, config: TrainConfig,
                   logger: Logger | None = None) -> TrainedArtifact:
    return TRAINERS[strategy](ds, config, logger)
