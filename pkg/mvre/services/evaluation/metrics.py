# mvre/services/evaluation/metrics.py

"""
Error metrics.
"""

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import ShapeError, ValidationError


def _pair(pred, truth) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(pred, dtype=np.float64).reshape(-1)
    t = np.asarray(truth, dtype=np.float64).reshape(-1)
    if p.size == 0:
        raise ValidationError("Metrics need at least one prediction")
    if p.size != t.size:
        raise ShapeError(f"{p.size} predictions for {t.size} truths")
    return p, t


def mae(pred, truth) -> float:
    p, t = _pair(pred, truth)
    return float(np.mean(np.abs(p - t)))


def rmse(pred, truth) -> float:
    p, t = _pair(pred, truth)
    return float(np.sqrt(np.mean((p - t) ** 2)))
