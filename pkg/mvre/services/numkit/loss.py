# mvre/services/numkit/loss.py

"""
Composite RMSE + MAE training loss.
"""

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import ShapeError, ValidationError
from ...objects.tensor import Tensor


def composite_loss(pred: Tensor | np.ndarray, target: Tensor | np.ndarray) -> tuple[float, Tensor]:
    """
    value = sqrt(mean((p-t)^2)) + mean(|p-t|)

    The gradient is the sum of both terms' analytic gradients. At an exact
    tie the MAE subgradient is 0, and the RMSE gradient is 0 when all
    residuals are 0.

    Returns:
        (value, gradient with respect to pred, shaped like pred)
    """
    p = pred.data if isinstance(pred, Tensor) else np.asarray(pred, dtype=np.float64)
    t = target.data if isinstance(target, Tensor) else np.asarray(target, dtype=np.float64)
    p, t = p.reshape(-1), t.reshape(-1)
    if p.size == 0:
        raise ValidationError("composite_loss needs at least one sample")
    if p.size != t.size:
        raise ShapeError(f"pred has {p.size} entries, target has {t.size}")

    n = p.size
    r = p - t
    rmse = float(np.sqrt(np.mean(r ** 2)))
    mae = float(np.mean(np.abs(r)))

    grad = np.sign(r) / n
    if rmse > 0:
        grad = grad + r / (n * rmse)

    return rmse + mae, Tensor(grad)
