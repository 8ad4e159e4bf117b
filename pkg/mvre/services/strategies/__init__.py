# mvre/services/strategies/__init__.py

"""
strategies: the baseline hedonic regression and the five multi-view
strategies, their shared training loop, persistence and coefficient
extraction.
"""

from .linear_regression import LinearFit, fit_linear_regression, predict_linear, independent_columns
from .dataset import ViewData, StrategyDataset, build_dataset, encode_view
from .training_loop import LoopData, FitResult, fit_loop, predict_batched
from .architectures import (build_cnn, build_hybrid, build_blackbox, disable_image_branch,
    warm_start, PENULTIMATE, IMAGE_SCALAR, OUTPUT)
from .artifact import TrainedArtifact, COMPONENTS
from .prediction import (predict_log, kernel_predictions, extract_image_features,
    extract_coefficients, boosted_design)
from .catalog import (train_baseline, train_m1_multikernel, train_m2_concat_rf, train_m3_boosted,
    train_m4_hybrid, train_m5_blackbox, train_strategy, TRAINERS)
from .artifact_store import save_artifact, load_artifact, read_manifest, find_artifacts

__all__ = [
    'LinearFit', 'fit_linear_regression', 'predict_linear', 'independent_columns',
    'ViewData', 'StrategyDataset', 'build_dataset', 'encode_view',
    'LoopData', 'FitResult', 'fit_loop', 'predict_batched',
    'build_cnn', 'build_hybrid', 'build_blackbox', 'disable_image_branch', 'warm_start',
    'PENULTIMATE', 'IMAGE_SCALAR', 'OUTPUT',
    'TrainedArtifact', 'COMPONENTS',
    'predict_log', 'kernel_predictions', 'extract_image_features', 'extract_coefficients',
    'boosted_design',
    'train_baseline', 'train_m1_multikernel', 'train_m2_concat_rf', 'train_m3_boosted',
    'train_m4_hybrid', 'train_m5_blackbox', 'train_strategy', 'TRAINERS',
    'save_artifact', 'load_artifact', 'read_manifest', 'find_artifacts',
]
