# mvre/services/tabular/encoding.py

"""
Schema-driven encoding of HouseRecords into normalized design matrices.
"""

# Default libs
import math

# Dependencies
import numpy as np

# Deps from this project
from ...objects.errors import SchemaError
from ...objects.house import DatasetSchema, FeatureMatrix, HouseRecord, NormStats


def _numeric_block(records: list[HouseRecord], schema: DatasetSchema) -> np.ndarray:
    block = np.empty((len(records), len(schema.numeric_fields)))
    for i, rec in enumerate(records):
        for j, name in enumerate(schema.numeric_fields):
            if name not in rec.values:
                raise SchemaError(f"Record {rec.record_id} is missing field '{name}'")
            try:
                value = float(rec.values[name])
            except (TypeError, ValueError):
                raise SchemaError(f"Record {rec.record_id}: '{name}' is not numeric")
            if not math.isfinite(value):
                raise SchemaError(f"Record {rec.record_id}: '{name}' is not finite")
            block[i, j] = value
    return block


def _onehot_block(records: list[HouseRecord], schema: DatasetSchema) -> tuple[np.ndarray, dict]:
    """
    Full-vocabulary one-hot. Categories outside the vocabulary encode as an
    all-zero group.
    """
    width = sum(len(v) for v in schema.categorical_fields.values())
    block = np.zeros((len(records), width))
    layout: dict[str, tuple[int, int]] = {}

    offset = len(schema.numeric_fields)
    col = 0
    for name, vocab in schema.categorical_fields.items():
        index = {level: k for k, level in enumerate(vocab)}
        layout[name] = (offset + col, len(vocab))
        for i, rec in enumerate(records):
            if name not in rec.values:
                raise SchemaError(f"Record {rec.record_id} is missing field '{name}'")
            k = index.get(str(rec.values[name]))
            if k is not None:
                block[i, col + k] = 1.0
        col += len(vocab)
    return block, layout


def _normalize(block: np.ndarray, schema: DatasetSchema, stats: NormStats) -> np.ndarray:
    out = np.empty_like(block)
    for j, name in enumerate(schema.numeric_fields):
        lo, hi = stats.minimum[name], stats.maximum[name]
        span = hi - lo
        out[:, j] = (block[:, j] - lo) / span if span > 0 else 0.0
    return out


def fit_transform(records: list[HouseRecord], schema: DatasetSchema) -> tuple[FeatureMatrix, NormStats]:
    """
    Learn min/max from these records and encode them.

    Numeric columns map x -> (x - min) / (max - min); constant columns map
    to 0. Categoricals are one-hot over their full vocabulary.
    """
    if not records:
        raise SchemaError("fit_transform needs at least one record")

    numeric = _numeric_block(records, schema)
    stats = NormStats(
        minimum={name: float(numeric[:, j].min()) for j, name in enumerate(schema.numeric_fields)},
        maximum={name: float(numeric[:, j].max()) for j, name in enumerate(schema.numeric_fields)},
    )
    return _assemble(records, schema, numeric, stats), stats


def transform(records: list[HouseRecord], schema: DatasetSchema, stats: NormStats) -> FeatureMatrix:
    """
    Encode with previously fitted statistics. Out-of-range values are not
    clamped.
    """
    missing = [f for f in schema.numeric_fields if f not in stats.minimum]
    if missing:
        raise SchemaError(f"Normalization stats lack fields {missing}")
    numeric = _numeric_block(records, schema)
    return _assemble(records, schema, numeric, stats)


def _assemble(records, schema, numeric, stats) -> FeatureMatrix:
    onehot, layout = _onehot_block(records, schema)
    values = np.hstack([_normalize(numeric, schema, stats), onehot])
    return FeatureMatrix(values=values, columns=schema.column_names(), stats=stats,
        onehot_layout=layout)
