# mvre/services/tabular/ingestion.py

"""
CSV ingestion of property records and the address geocoding lookup table.
"""

# Default libs
import math
from pathlib import Path

# Dependencies
import pandas as pd

# Deps from this project
from ...objects.errors import SchemaError, ValidationError
from ...objects.geo import GeoPoint
from ...objects.house import DatasetSchema, HouseRecord


class GeocodingTable:
    """
    Address -> GeoPoint lookup loaded from a CSV with columns
    address, lat, lon. Addresses are matched case-insensitively after
    whitespace normalization.
    """

    def __init__(self, entries: dict[str, GeoPoint]):
        self._entries = entries

    @staticmethod
    def _key(address: str) -> str:
        return " ".join(str(address).split()).lower()

    @classmethod
    def load(cls, path: Path) -> "GeocodingTable":
        try:
            frame = pd.read_csv(path, dtype={"address": str}, encoding="utf-8")
        except (OSError, pd.errors.ParserError) as e:
            raise SchemaError(f"Could not read geocoding table {path}: {e}") from e
        missing = {"address", "lat", "lon"} - set(frame.columns)
        if missing:
            raise SchemaError(f"Geocoding table lacks columns {sorted(missing)}")
        return cls({cls._key(row.address): GeoPoint(float(row.lat), float(row.lon))
            for row in frame.itertuples(index=False)})

    def lookup(self, address: str | None) -> GeoPoint | None:
        if address is None:
            return None
        return self._entries.get(self._key(address))

    def __len__(self) -> int:
        return len(self._entries)


def _optional_float(value) -> float | None:
    if value is None:
        return None
    try:
        x = float(value)
    except (TypeError, ValueError):
        return None
    return x if math.isfinite(x) else None


def load_records(csv_path: Path, schema: DatasetSchema,
                 geocoder: GeocodingTable | None = None) -> list[HouseRecord]:
    """
    Read a UTF-8 CSV whose header carries the schema names.

    Optional columns: id, target, lat/lon, locality, address. Missing
    coordinates are resolved through the geocoder when one is given.
    Missing values are not imputed: a record with an empty feature cell
    raises SchemaError.
    """
    text_cols = list(schema.categorical_fields) + [schema.locality_field, schema.address_field, "id"]
    try:
        frame = pd.read_csv(csv_path, dtype={c: str for c in text_cols}, encoding="utf-8",
            keep_default_na=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise SchemaError(f"Could not read {csv_path}: {e}") from e

    missing = [f for f in schema.feature_fields if f not in frame.columns]
    if missing:
        raise SchemaError(f"{csv_path} lacks schema columns {missing}")

    records: list[HouseRecord] = []
    for i, row in enumerate(frame.to_dict(orient="records")):
        record_id = str(row["id"]) if "id" in row and isinstance(row["id"], str) else str(i)

        values: dict[str, float | str] = {}
        for name in schema.numeric_fields:
            value = _optional_float(row[name])
            if value is None:
                raise SchemaError(f"Record {record_id}: '{name}' is empty or not numeric")
            values[name] = value
        for name in schema.categorical_fields:
            cell = row[name]
            if not isinstance(cell, str):
                raise SchemaError(f"Record {record_id}: '{name}' is empty")
            values[name] = cell

        target = _optional_float(row.get(schema.target_field))

        geo = None
        lat, lon = _optional_float(row.get(schema.lat_field)), _optional_float(row.get(schema.lon_field))
        if lat is not None and lon is not None:
            try:
                geo = GeoPoint(lat, lon)
            except ValidationError as e:
                raise SchemaError(f"Record {record_id}: {e}") from e
        elif geocoder is not None and isinstance(row.get(schema.address_field), str):
            geo = geocoder.lookup(row[schema.address_field])

        locality = row.get(schema.locality_field)
        records.append(HouseRecord(
            record_id=record_id,
            values=values,
            target=target,
            geo=geo,
            locality=locality if isinstance(locality, str) else None,
        ))

    if not records:
        raise SchemaError(f"{csv_path} holds no records")
    return records
