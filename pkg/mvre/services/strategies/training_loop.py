# mvre/services/strategies/training_loop.py

"""
Shared mini-batch training loop: Adam on the composite loss with the
best-on-validation snapshot.
"""

# Default libs
import math
from dataclasses import dataclass, field
from typing import Any

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import DivergenceError, NonFiniteError, ShapeError
from ...objects.strategy import TrainConfig
from ...utilities.logging_utility import Logger
from ..numkit import AdamState, Network, adam_step, backward, composite_loss, forward


@dataclass
class LoopData:
    """ Target plus whichever port inputs the network reads """
    y: np.ndarray
    tabular: np.ndarray | None = None
    image: np.ndarray | None = None

    def __post_init__(self):
        self.y = np.asarray(self.y, dtype=np.float64).reshape(-1)
        for name in ("tabular", "image"):
            arr = getattr(self, name)
            if arr is not None and arr.shape[0] != self.y.size:
                raise ShapeError(f"{name} has {arr.shape[0]} rows, target has {self.y.size}")

    @property
    def n(self) -> int:
        return int(self.y.size)

    def take(self, rows: np.ndarray) -> "LoopData":
        return LoopData(self.y[rows],
            None if self.tabular is None else self.tabular[rows],
            None if self.image is None else self.image[rows])


@dataclass
class FitResult:
    best_epoch: int
    best_val_loss: float
    epochs_run: int
    history: list[dict[str, Any]] = field(default_factory=list)


def predict_batched(net: Network, data: LoopData, batch: int = 256) -> np.ndarray:
    """ Forward pass in chunks; returns one prediction per row """
    outs = []
    for start in range(0, data.n, batch):
        rows = np.arange(start, min(start + batch, data.n))
        part = data.take(rows)
        out, _ = forward(net, tabular=part.tabular, image=part.image)
        outs.append(out.data)
    return np.concatenate(outs) if outs else np.empty(0)


def fit_loop(net: Network, train: LoopData, val: LoopData, config: TrainConfig,
             logger: Logger | None = None, label: str = "network") -> FitResult:
    """
    Train `net` in place and leave it holding the parameters of the epoch
    with the lowest validation loss (ties keep the earlier epoch).

    One epoch is a pass over the training rows in a permutation drawn from
    a generator seeded with seed + epoch.

    Raises:
        DivergenceError: a training or validation loss (or activation, or
            parameter) became non-finite
    """
    state = AdamState.for_params(net.parameters())
    best_params = net.snapshot()
    best_loss, best_epoch = math.inf, 0
    history: list[dict[str, Any]] = []
    stale = 0
    epoch = 0

    for epoch in range(1, config.max_epochs + 1):
        order = np.random.default_rng(config.seed + epoch).permutation(train.n)
        batch_losses = []
        try:
            for start in range(0, train.n, config.batch):
                part = train.take(order[start:start + config.batch])
                out, cache = forward(net, tabular=part.tabular, image=part.image)
                loss, grad = composite_loss(out, part.y)
                if not math.isfinite(loss):
                    raise DivergenceError(f"{label}: training loss became {loss} at epoch {epoch}")
                grads = backward(net, cache, grad)
                params, state = adam_step(net.parameters(), grads, state,
                    config.lr, config.beta1, config.beta2, config.eps)
                net.load_parameters(params)
                batch_losses.append(loss)

            val_loss, _ = composite_loss(predict_batched(net, val), val.y)
        except NonFiniteError as e:
            raise DivergenceError(f"{label}: diverged at epoch {epoch} ({e})") from e
        if not math.isfinite(val_loss):
            raise DivergenceError(f"{label}: validation loss became {val_loss} at epoch {epoch}")

        train_loss = float(np.mean(batch_losses))
        history.append({"epoch": epoch, "train_loss": train_loss, "val_loss": float(val_loss)})

        if val_loss < best_loss:
            best_loss, best_epoch = float(val_loss), epoch
            best_params = net.snapshot()
            stale = 0
        else:
            stale += 1

        if logger is not None:
            logger.log(Logger.DEBUG, f"{label} epoch {epoch}: train {train_loss:.5f} "
                f"val {val_loss:.5f}{' *' if best_epoch == epoch else ''}")

        if config.patience is not None and stale >= config.patience:
            if logger is not None:
                logger.log(Logger.INFO, f"{label}: no improvement for {stale} epochs, "
                    f"stopping at epoch {epoch}")
            break

    net.load_parameters(best_params)
    if logger is not None:
        logger.log(Logger.INFO, f"{label}: best validation loss {best_loss:.5f} at epoch {best_epoch}")
    return FitResult(best_epoch, best_loss, epoch, history)
