# mvre/objects/synth.py

"""
Code file for housing SynthConfig and SynthDataset.
"""

# Default libs
from dataclasses import dataclass, field
from typing import Any

# Dependencies
import numpy as np

# Deps from this project
from .errors import ValidationError
from .house import DatasetSchema, HouseRecord


# name -> (min, max) of the generated attribute ranges
NUMERIC_RANGES: dict[str, tuple[float, float]] = {
    "square_feet": (1022.0, 7352.0),
    "year_built": (1790.0, 2015.0),
    "full_bathrooms": (1.0, 7.0),
    "half_bathrooms": (0.0, 3.0),
    "bedrooms": (1.0, 7.0),
    "acres": (0.06, 4.88),
}

# Default coefficients on the [0, 1] latent scale, in NUMERIC_RANGES order
DEFAULT_NUMERIC_BETA = (1.0, 0.3, 0.2, 0.05, 0.1, 0.15)

DEFAULT_CATEGORICALS: dict[str, int] = {"fireplace": 2, "style": 3}


@dataclass(frozen=True)
class SynthConfig:
    """
    Parameters of the synthetic price law

        log(price) = intercept + beta . x + gamma * q
                     [+ interaction_strength * (2 x0 - 1) * (2 q - 1)] + eps,
        eps ~ Normal(0, sigma^2)

    x is the encoded feature vector (latent uniforms, then one-hot groups),
    q the hidden image quality in [0, 1].

    Attributes:
        d_num: number of numeric attributes (taken from NUMERIC_RANGES in order)
        categoricals: name -> vocabulary size
        beta: coefficient per encoded column; None uses the built-in defaults
        localities: number of q-quantile locality bands
        locality_feature: also expose the locality as a categorical feature
    """

    n: int = 2000
    d_num: int = 6
    categoricals: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_CATEGORICALS))
    beta: tuple[float, ...] | None = None
    intercept: float = 12.0
    gamma: float = 0.7
    interaction: bool = False
    interaction_strength: float = 0.3
    sigma: float = 0.1
    image_size: int = 32
    localities: int = 5
    locality_feature: bool = False
    tile_level: int = 16
    seed: int = 7

    def __post_init__(self):
        if self.n < 10:
            raise ValidationError(f"n must be >= 10, got {self.n}")
        if not self.sigma >= 0:
            raise ValidationError(f"sigma must be >= 0, got {self.sigma}")
        if not 0 <= self.d_num <= len(NUMERIC_RANGES):
            raise ValidationError(f"d_num must lie in [0, {len(NUMERIC_RANGES)}], got {self.d_num}")
        if any(v < 1 for v in self.categoricals.values()):
            raise ValidationError("Categorical vocabulary sizes must be >= 1")
        if self.image_size < 16:
            raise ValidationError(f"image_size must be >= 16 to render disks, got {self.image_size}")
        if self.localities < 1:
            raise ValidationError(f"localities must be >= 1, got {self.localities}")
        if self.seed < 0:
            raise ValidationError(f"seed must be >= 0, got {self.seed}")
        if self.beta is not None and len(self.beta) != self.encoded_width:
            raise ValidationError(f"beta has {len(self.beta)} entries, "
                f"encoded width is {self.encoded_width}")

    @property
    def numeric_fields(self) -> tuple[str, ...]:
        return tuple(NUMERIC_RANGES)[:self.d_num]

    @property
    def encoded_width(self) -> int:
        return self.d_num + sum(self.categoricals.values())

    def coefficients(self) -> np.ndarray:
        """ beta, or the defaults: table values for numerics, 0.05 * level index for one-hots """
        if self.beta is not None:
            return np.asarray(self.beta, dtype=np.float64)
        parts = [DEFAULT_NUMERIC_BETA[:self.d_num]]
        parts += [tuple(0.05 * j for j in range(size)) for size in self.categoricals.values()]
        return np.asarray([b for p in parts for b in p], dtype=np.float64)

    def schema(self) -> DatasetSchema:
        cats = {name: tuple(f"{name}_{j}" for j in range(size))
            for name, size in self.categoricals.items()}
        if self.locality_feature:
            cats["locality"] = tuple(f"L{j}" for j in range(self.localities))
        return DatasetSchema(numeric_fields=self.numeric_fields, categorical_fields=cats)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n, "d_num": self.d_num, "categoricals": dict(self.categoricals),
            "beta": self.coefficients().tolist(), "intercept": self.intercept,
            "gamma": self.gamma, "interaction": self.interaction,
            "interaction_strength": self.interaction_strength, "sigma": self.sigma,
            "image_size": self.image_size, "localities": self.localities,
            "locality_feature": self.locality_feature, "tile_level": self.tile_level,
            "seed": self.seed,
        }


@dataclass
class SynthDataset:
    """
    Generated records with one image per record and the hidden truths.

    Attributes:
        latent: (n, d) encoded feature matrix the price law was applied to
        log_price: log of each record's price
        quality: hidden q per record
        disks: rendered disk count per record
        images: record id -> (S, S, 3) image in [0, 1]
        quadkeys: record id -> quadkey the image is stored under
    """

    config: SynthConfig
    schema: DatasetSchema
    records: list[HouseRecord]
    latent: np.ndarray
    log_price: np.ndarray
    quality: np.ndarray
    disks: np.ndarray
    images: dict[str, np.ndarray]
    quadkeys: dict[str, str]

    def truth(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "columns": self.schema.column_names()[:self.latent.shape[1]],
            "records": [{"id": r.record_id, "q": float(q), "disks": int(k), "quadkey": self.quadkeys[r.record_id]}
                for r, q, k in zip(self.records, self.quality, self.disks)],
        }
