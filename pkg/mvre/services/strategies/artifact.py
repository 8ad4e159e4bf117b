# mvre/services/strategies/artifact.py

"""
Code file for housing TrainedArtifact, the output of every strategy.
"""

# Default libs
from dataclasses import dataclass, field
from typing import Any

# Deps from this project
from ...objects.errors import ArtifactMismatchError
from ...objects.house import DatasetSchema, NormStats
from ...objects.strategy import StrategyId, TrainConfig
from ..forest import ForestModel
from ..numkit import Network
from .linear_regression import LinearFit


# strategy -> (regression stages, networks, needs forest)
COMPONENTS: dict[StrategyId, tuple[frozenset[str], frozenset[str], bool]] = {
    StrategyId.BASELINE: (frozenset({"regression"}), frozenset(), False),
    StrategyId.M1_MULTIKERNEL: (frozenset({"tabular_kernel"}), frozenset({"cnn"}), False),
    StrategyId.M2_CONCAT_RF: (frozenset(), frozenset({"cnn"}), True),
    StrategyId.M3_BOOSTED: (frozenset({"stage1", "stage3"}), frozenset({"cnn"}), False),
    StrategyId.M4_HYBRID: (frozenset(), frozenset({"hybrid"}), False),
    StrategyId.M5_BLACKBOX: (frozenset(), frozenset({"blackbox"}), False),
}


@dataclass
class TrainedArtifact:
    """
    Everything needed to predict with a trained strategy. Predictions are a
    pure function of the artifact and the encoded inputs.

    Attributes:
        linear: regression stages by name
        networks: numkit networks by name
        forest: downstream learner of the concatenation strategy
        history: per-network validation history
        notes: strategy-specific facts (e.g. a dropped image column)
        val_metrics: validation MAE/RMSE in currency units, filled in by the trainer
    """

    strategy: StrategyId
    config: TrainConfig
    schema: DatasetSchema
    columns: list[str]
    stats: NormStats
    split_id: str
    target_transform: str = "log"
    linear: dict[str, LinearFit] = field(default_factory=dict)
    networks: dict[str, Network] = field(default_factory=dict)
    forest: ForestModel | None = None
    history: dict[str, list[dict[str, Any]]] = field(default_factory=dict)
    notes: dict[str, Any] = field(default_factory=dict)
    val_metrics: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """ The artifact holds exactly the components its strategy requires """
        stages, nets, needs_forest = COMPONENTS[self.strategy]
        if set(self.linear) != stages:
            raise ArtifactMismatchError(f"{self.strategy.value} expects regression stages "
                f"{sorted(stages)}, got {sorted(self.linear)}")
        if set(self.networks) != nets:
            raise ArtifactMismatchError(f"{self.strategy.value} expects networks "
                f"{sorted(nets)}, got {sorted(self.networks)}")
        if (self.forest is not None) != needs_forest:
            raise ArtifactMismatchError(f"{self.strategy.value} "
                f"{'requires' if needs_forest else 'must not carry'} a forest")
        if self.target_transform != "log":
            raise ArtifactMismatchError(f"Unsupported target transform '{self.target_transform}'")

    @property
    def name(self) -> str:
        return f"{self.strategy.value}_seed{self.config.seed}"
