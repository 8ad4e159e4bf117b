# mvre/objects/eval_report.py

"""
Code file for housing EvalReport.
"""

# Default libs
import math
from dataclasses import dataclass, field
from typing import Any

# Deps from this project
from .errors import ValidationError
from .strategy import StrategyId


# Absolute slack for MAE <= RMSE when both are computed in floating point
_JENSEN_SLACK = 1e-9


@dataclass(frozen=True)
class EvalReport:
    """
    Test-set metrics of one trained strategy, in currency units.

    Attributes:
        extra: additional named metrics (e.g. per-kernel MAE)
        timestamp: ISO time of evaluation, None when timestamps are off
    """

    strategy: StrategyId
    split_id: str
    seed: int
    mae: float
    rmse: float
    n: int
    config_digest: str = ""
    timestamp: str | None = None
    extra: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"A report needs n > 0, got {self.n}")
        if not (math.isfinite(self.mae) and math.isfinite(self.rmse)):
            raise ValidationError(f"Metrics must be finite (mae={self.mae}, rmse={self.rmse})")
        if self.mae > self.rmse + _JENSEN_SLACK * max(1.0, self.rmse):
            raise ValidationError(f"MAE {self.mae} exceeds RMSE {self.rmse}")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.strategy.rank, self.seed)

    def to_dict(self, include_timestamp: bool = False) -> dict[str, Any]:
        d = {
            "strategy": self.strategy.value,
            "family": self.strategy.family,
            "interpretable": self.strategy.interpretable,
            "split": self.split_id,
            "seed": self.seed,
            "mae": self.mae,
            "rmse": self.rmse,
            "n": self.n,
            "config_digest": self.config_digest,
            "extra": dict(sorted(self.extra.items())),
        }
        if include_timestamp:
            d["timestamp"] = self.timestamp
        return d
