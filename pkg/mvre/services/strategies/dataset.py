# mvre/services/strategies/dataset.py

"""
Encoded per-partition views (tabular matrix, log target, image stack) that
every strategy trains and predicts on.
"""

# Default libs
from dataclasses import dataclass

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import MissingImagesError, SchemaError
from ...objects.house import DatasetSchema, HouseRecord, NormStats
from ..tabular import fit_transform, transform, log_target, SplitPlan


@dataclass
class ViewData:
    """
    One partition. `y` is the log price (None for unlabeled records);
    `images` is (n, H, W, 3) or None when any record lacks an image, in
    which case `missing_images` names those records.
    """
    record_ids: list[str]
    X: np.ndarray
    y: np.ndarray | None
    images: np.ndarray | None = None
    missing_images: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return int(self.X.shape[0])

    def require_images(self, who: str) -> np.ndarray:
        if self.images is None:
            listed = ", ".join(self.missing_images[:5])
            more = "" if len(self.missing_images) <= 5 else f" (+{len(self.missing_images) - 5} more)"
            raise MissingImagesError(f"{who} needs an image for every record; "
                f"missing for {listed}{more}")
        return self.images

    def require_target(self) -> np.ndarray:
        if self.y is None:
            raise SchemaError("Records carry no price target")
        return self.y


@dataclass
class StrategyDataset:
    """ Train/validation views sharing the train-fitted normalization """
    schema: DatasetSchema
    columns: list[str]
    stats: NormStats
    train: ViewData
    val: ViewData
    split_id: str


def _stack_images(records: list[HouseRecord],
                  images: dict[str, np.ndarray] | None) -> tuple[np.ndarray | None, tuple[str, ...]]:
    if images is None:
        return None, tuple(r.record_id for r in records)
    missing = tuple(r.record_id for r in records if r.record_id not in images)
    if missing:
        return None, missing
    return np.stack([images[r.record_id] for r in records]), ()


def _targets(records: list[HouseRecord]) -> np.ndarray | None:
    if any(r.target is None for r in records):
        return None
    return log_target(np.array([r.target for r in records], dtype=np.float64))


def encode_view(records: list[HouseRecord], schema: DatasetSchema, stats: NormStats,
                images: dict[str, np.ndarray] | None = None) -> ViewData:
    """ Encode with already-fitted statistics (validation and test partitions) """
    matrix = transform(records, schema, stats)
    stack, missing = _stack_images(records, images)
    return ViewData([r.record_id for r in records], matrix.values, _targets(records), stack, missing)


def build_dataset(plan: SplitPlan, schema: DatasetSchema,
                  images: dict[str, np.ndarray] | None = None) -> StrategyDataset:
    """
    Fit min/max on the train partition only and encode train and val with it.
    """
    matrix, stats = fit_transform(plan.train, schema)
    stack, missing = _stack_images(plan.train, images)
    train = ViewData([r.record_id for r in plan.train], matrix.values, _targets(plan.train),
        stack, missing)
    val = encode_view(plan.val, schema, stats, images)
    return StrategyDataset(schema, matrix.columns, stats, train, val, plan.split_id)
