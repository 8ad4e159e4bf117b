# mvre/services/numkit/optimizer.py

"""
Adam optimizer as a pure update function over parameter lists.
"""

# Default libs
from dataclasses import dataclass

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import NonFiniteError, ShapeError, ValidationError
from ...objects.tensor import Tensor


@dataclass
class AdamState:
    """
    First/second moment estimates, one pair per parameter tensor, and the
    number of steps taken so far.
    """
    t: int
    m: list[np.ndarray]
    v: list[np.ndarray]

    @classmethod
    def for_params(cls, params: list[Tensor]) -> "AdamState":
        return cls(0, [np.zeros_like(p.data) for p in params],
            [np.zeros_like(p.data) for p in params])


def adam_step(params: list[Tensor], grads: list[Tensor], state: AdamState,
              lr: float = 1e-3, beta1: float = 0.9, beta2: float = 0.999,
              eps: float = 1e-8) -> tuple[list[Tensor], AdamState]:
    """
    One bias-corrected Adam step:

        m <- b1*m + (1-b1)*g
        v <- b2*v + (1-b2)*g^2
        p <- p - lr * m_hat / sqrt(v_hat + eps)

    eps sits inside the square root. eps = 0 is accepted; entries whose
    denominator is zero are left unchanged.

    Returns:
        New parameter tensors and a new state. Inputs are not mutated.
    """
    if not lr > 0:
        raise ValidationError(f"lr must be > 0, got {lr}")
    if not (0 <= beta1 < 1 and 0 <= beta2 < 1):
        raise ValidationError(f"betas must lie in [0, 1), got ({beta1}, {beta2})")
    if not eps >= 0:
        raise ValidationError(f"eps must be >= 0, got {eps}")
    if not (len(params) == len(grads) == len(state.m) == len(state.v)):
        raise ShapeError("params, grads and Adam moments differ in length")

    t = state.t + 1
    new_params, new_m, new_v = [], [], []
    for p, g, m, v in zip(params, grads, state.m, state.v):
        if g.data.shape != p.data.shape or m.shape != p.data.shape:
            raise ShapeError(f"Gradient shape {g.shape} does not match parameter {p.shape}")
        if not np.all(np.isfinite(g.data)):
            raise NonFiniteError("Non-finite gradient passed to adam_step")

        m = beta1 * m + (1 - beta1) * g.data
        v = beta2 * v + (1 - beta2) * g.data ** 2
        m_hat = m / (1 - beta1 ** t)
        v_hat = v / (1 - beta2 ** t)
        denom = np.sqrt(v_hat + eps)
        step = np.divide(m_hat, denom, out=np.zeros_like(m_hat), where=denom > 0)

        new_params.append(Tensor(p.data - lr * step))
        new_m.append(m)
        new_v.append(v)

    return new_params, AdamState(t, new_m, new_v)
