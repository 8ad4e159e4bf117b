# mvre/objects/strategy.py

"""
Code file for housing StrategyId, TrainConfig and CoefficientReport.
"""

# Default libs
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Any

# Deps from this project
from ..constants.constant import STRATEGY_ALIASES, STRATEGY_FAMILY, STRATEGY_ORDER, IMAGE_STRATEGIES
from .errors import ValidationError


class StrategyId(str, Enum):
    BASELINE = "baseline"
    M1_MULTIKERNEL = "m1_multikernel"
    M2_CONCAT_RF = "m2_concat_rf"
    M3_BOOSTED = "m3_boosted"
    M4_HYBRID = "m4_hybrid"
    M5_BLACKBOX = "m5_blackbox"

    @classmethod
    def parse(cls, name: str) -> "StrategyId":
        """ Accepts full names and the short aliases baseline, m1..m5 """
        full = STRATEGY_ALIASES.get(name, name)
        try:
            return cls(full)
        except ValueError:
            raise ValidationError(f"Unknown strategy '{name}', expected one of "
                f"{', '.join(STRATEGY_ALIASES)}")

    @property
    def rank(self) -> int:
        return STRATEGY_ORDER.index(self.value)

    @property
    def needs_images(self) -> bool:
        return self.value in IMAGE_STRATEGIES

    @property
    def family(self) -> str:
        return STRATEGY_FAMILY[self.value][0]

    @property
    def interpretable(self) -> bool:
        return STRATEGY_FAMILY[self.value][1]


@dataclass(frozen=True)
class TrainConfig:
    """
    Typed view of the result-affecting training settings.

    Attributes:
        max_epochs: upper bound on passes over the training set
        patience: stop after this many epochs without a new best validation
            loss; None trains all max_epochs
        penultimate: width of the last hidden dense layer of the CNN trunk
        branch_width: width of the black-box network's dense layers
        n_trees / max_depth / min_leaf / max_features: forest settings
    """

    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    batch: int = 32
    max_epochs: int = 80
    patience: int | None = None
    seed: int = 7
    penultimate: int = 16
    branch_width: int = 64
    image_size: int = 32
    n_trees: int = 50
    max_depth: int | None = 12
    min_leaf: int = 2
    max_features: int | None = None

    def __post_init__(self):
        if self.max_epochs < 1:
            raise ValidationError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if self.batch < 1:
            raise ValidationError(f"batch must be >= 1, got {self.batch}")
        if min(self.penultimate, self.branch_width) < 1:
            raise ValidationError("Layer widths must be >= 1")
        if self.image_size < 10:
            raise ValidationError(f"image_size must be >= 10 for the CNN trunk, got {self.image_size}")
        if self.patience is not None and self.patience < 1:
            raise ValidationError(f"patience must be >= 1, got {self.patience}")
        if self.seed < 0:
            raise ValidationError(f"seed must be >= 0, got {self.seed}")

    @classmethod
    def from_config(cls, config, **overrides) -> "TrainConfig":
        """ Build from a layered Config (or anything exposing the same attributes) """
        values = dict(
            lr=float(config.lr), beta1=float(config.beta1), beta2=float(config.beta2),
            eps=float(config.eps), batch=int(config.batch), max_epochs=int(config.epochs),
            patience=None if config.patience is None else int(config.patience),
            seed=int(config.seed), penultimate=int(config.penultimate),
            branch_width=int(config.branch_width), image_size=int(config.image_size),
            n_trees=int(config.n_trees),
            max_depth=None if config.max_depth is None else int(config.max_depth),
            min_leaf=int(config.min_leaf),
            max_features=None if config.max_features is None else int(config.max_features),
        )
        values.update(overrides)
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TrainConfig":
        known = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        return cls(**known)


@dataclass
class Coefficient:
    name: str
    value: float
    std_error: float | None = None
    t_value: float | None = None
    p_value: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class CoefficientReport:
    """
    Named coefficients of an interpretable strategy. Regression stages carry
    standard errors, t-values and p-values; the hybrid network's weights
    carry none.

    Attributes:
        dropped: columns removed before fitting (redundant or constant)
    """

    strategy: StrategyId
    coefficients: list[Coefficient]
    dropped: list[str] = field(default_factory=list)
    source: str = "regression"

    def __post_init__(self):
        if not self.strategy.interpretable:
            raise ValidationError(f"{self.strategy.value} has no coefficient report")

    def get(self, name: str) -> Coefficient | None:
        return next((c for c in self.coefficients if c.name == name), None)

    def as_mapping(self) -> dict[str, float]:
        return {c.name: c.value for c in self.coefficients}

    def to_dict(self) -> dict[str, Any]:
        return {
            "strategy": self.strategy.value,
            "source": self.source,
            "dropped": list(self.dropped),
            "coefficients": [c.to_dict() for c in self.coefficients],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CoefficientReport":
        return cls(
            strategy=StrategyId(d["strategy"]),
            coefficients=[Coefficient(**c) for c in d["coefficients"]],
            dropped=list(d.get("dropped", [])),
            source=d.get("source", "regression"),
        )
