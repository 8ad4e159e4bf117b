# mvre/objects/house.py

"""
Code file for housing the tabular domain objects: DatasetSchema,
HouseRecord, NormStats and FeatureMatrix.
"""

# Default libs
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

# Dependencies
import numpy as np

# Deps from this project
from .errors import SchemaError
from .geo import GeoPoint


@dataclass(frozen=True)
class DatasetSchema:
    """
    Field kinds of a property dataset.

    Attributes:
        numeric_fields: names of the numeric attributes, in column order
        categorical_fields: name -> vocabulary, in column order
        target_field: name of the price column (USD)
        locality_field: column used as locality label (may also be categorical)
        lat_field / lon_field: optional coordinate columns
        address_field: optional address column for the geocoding table
    """

    numeric_fields: tuple[str, ...]
    categorical_fields: dict[str, tuple[str, ...]]
    target_field: str = "totalmarketvalue"
    locality_field: str = "locality"
    lat_field: str = "lat"
    lon_field: str = "lon"
    address_field: str = "address"

    def __post_init__(self):
        names = list(self.numeric_fields) + list(self.categorical_fields)
        if len(set(names)) != len(names):
            raise SchemaError(f"Schema field names are not unique: {names}")
        if self.target_field in names:
            raise SchemaError(f"Target '{self.target_field}' is also listed as a feature")
        for name, vocab in self.categorical_fields.items():
            if not vocab:
                raise SchemaError(f"Categorical field '{name}' has an empty vocabulary")
            if len(set(vocab)) != len(vocab):
                raise SchemaError(f"Vocabulary of '{name}' has duplicates")


    @property
    def feature_fields(self) -> list[str]:
        return list(self.numeric_fields) + list(self.categorical_fields)


    @property
    def encoded_width(self) -> int:
        return len(self.numeric_fields) + sum(len(v) for v in self.categorical_fields.values())


    def column_names(self) -> list[str]:
        """ Encoded column names: numeric names, then '<field>=<level>' per one-hot slot """
        cols = list(self.numeric_fields)
        for name, vocab in self.categorical_fields.items():
            cols.extend(f"{name}={level}" for level in vocab)
        return cols


    def to_dict(self) -> dict[str, Any]:
        return {
            "numeric_fields": list(self.numeric_fields),
            "categorical_fields": {k: list(v) for k, v in self.categorical_fields.items()},
            "target_field": self.target_field,
            "locality_field": self.locality_field,
            "lat_field": self.lat_field,
            "lon_field": self.lon_field,
            "address_field": self.address_field,
        }


    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "DatasetSchema":
        try:
            return cls(
                numeric_fields=tuple(d["numeric_fields"]),
                categorical_fields={k: tuple(str(x) for x in v)
                    for k, v in d.get("categorical_fields", {}).items()},
                target_field=d.get("target_field", "totalmarketvalue"),
                locality_field=d.get("locality_field", "locality"),
                lat_field=d.get("lat_field", "lat"),
                lon_field=d.get("lon_field", "lon"),
                address_field=d.get("address_field", "address"),
            )
        except KeyError as e:
            raise SchemaError(f"Schema config is missing {e}") from e


    @classmethod
    def load(cls, path: Path) -> "DatasetSchema":
        try:
            return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as e:
            raise SchemaError(f"Could not read schema {path}: {e}") from e


    def save(self, path: Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class HouseRecord:
    """
    One property. `values` maps schema field names to floats (numeric) or
    strings (categorical).
    """

    record_id: str
    values: dict[str, float | str]
    target: float | None = None
    geo: GeoPoint | None = None
    locality: str | None = None

    def __post_init__(self):
        if self.target is not None and not (math.isfinite(self.target) and self.target > 0):
            raise SchemaError(f"Record {self.record_id}: price must be > 0, got {self.target}")


@dataclass
class NormStats:
    """ Train-partition min/max per numeric column """

    minimum: dict[str, float]
    maximum: dict[str, float]

    def to_dict(self) -> dict[str, Any]:
        return {"min": self.minimum, "max": self.maximum}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "NormStats":
        return cls({k: float(v) for k, v in d["min"].items()},
            {k: float(v) for k, v in d["max"].items()})


@dataclass
class FeatureMatrix:
    """
    Encoded n x d design matrix.

    Attributes:
        values: the matrix
        columns: encoded column names
        stats: normalization statistics used for the numeric block
        onehot_layout: categorical field -> (first column, width)
    """

    values: np.ndarray
    columns: list[str]
    stats: NormStats
    onehot_layout: dict[str, tuple[int, int]] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def d(self) -> int:
        return int(self.values.shape[1])
