# mvre/services/evaluation/evaluate.py

"""
Evaluation of trained artifacts on the currency scale, and improvement
accounting between reports.
"""

# Default libs
from datetime import datetime, timezone

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import ArtifactMismatchError, SplitError, ValidationError
from ...objects.eval_report import EvalReport
from ...objects.strategy import StrategyId
from ..strategies import TrainedArtifact, ViewData, kernel_predictions, predict_log
from ..tabular import inv_log_target
from .metrics import mae, rmse


def currency_metrics(log_pred, log_truth) -> tuple[float, float]:
    """ Exponentiate both sides, then (MAE, RMSE) """
    pred = inv_log_target(np.asarray(log_pred, dtype=np.float64))
    truth = inv_log_target(np.asarray(log_truth, dtype=np.float64))
    return mae(pred, truth), rmse(pred, truth)


def evaluate(artifact: TrainedArtifact, test: ViewData, config_digest: str = "",
             include_timestamp: bool = False) -> EvalReport:
    """
    Predict the test partition in log space, invert the log and measure.

    Raises:
        MissingImagesError: image strategy and a test record without image
        ArtifactMismatchError: encoded width differs from the artifact's
    """
    if test.X.shape[1] != len(artifact.columns):
        raise ArtifactMismatchError(f"{artifact.name} expects {len(artifact.columns)} encoded "
            f"columns, test data has {test.X.shape[1]}")
    y = test.require_target()
    log_pred = predict_log(artifact, test)
    test_mae, test_rmse = currency_metrics(log_pred, y)

    extra: dict[str, float] = {}
    if artifact.strategy == StrategyId.M1_MULTIKERNEL:
        for kernel, pred in kernel_predictions(artifact, test).items():
            extra[f"{kernel}_kernel_mae"] = currency_metrics(pred, y)[0]

    return EvalReport(
        strategy=artifact.strategy,
        split_id=artifact.split_id,
        seed=artifact.config.seed,
        mae=test_mae,
        rmse=test_rmse,
        n=test.n,
        config_digest=config_digest,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds") if include_timestamp else None,
        extra=extra,
    )


def improvement(report_a: EvalReport, report_b: EvalReport) -> float:
    """ Percent MAE reduction of b over a: (MAE_a - MAE_b) / MAE_a * 100 """
    if report_a.split_id != report_b.split_id:
        raise SplitError(f"Reports were evaluated on different splits "
            f"('{report_a.split_id}' vs '{report_b.split_id}')")
    if report_a.mae == 0:
        if report_b.mae == 0:
            return 0.0
        raise ValidationError("Improvement is undefined for a reference MAE of 0")
    return (report_a.mae - report_b.mae) / report_a.mae * 100.0
