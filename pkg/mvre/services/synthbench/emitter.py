# mvre/services/synthbench/emitter.py

"""
Writes a SynthDataset in the same CSV + tile-store layout the real-data
path reads.
"""

# Default libs
import json
from pathlib import Path

# Dependencies
import numpy as np
import pandas as pd

# Deps from this project
from ...constants.constant import SYNTH_CSV, SYNTH_SCHEMA, SYNTH_TILES, SYNTH_TRUTH
from ...objects.errors import DataError
from ...objects.synth import SynthDataset
from ..geotile import atomic_write, encode_tile


def records_frame(ds: SynthDataset) -> pd.DataFrame:
    schema = ds.schema
    rows = []
    for rec in ds.records:
        row = {"id": rec.record_id}
        row.update({name: rec.values[name] for name in schema.feature_fields})
        row[schema.locality_field] = rec.locality
        row[schema.lat_field] = rec.geo.lat
        row[schema.lon_field] = rec.geo.lon
        row[schema.target_field] = rec.target
        rows.append(row)
    return pd.DataFrame(rows)


def emit_dataset(ds: SynthDataset, out: Path) -> dict[str, Path]:
    """
    Write <out>/houses.csv, schema.json, truth.json and
    tiles/<level>/<quadkey>.png. Returns the written paths.
    """
    out = Path(out)
    tiles = out / SYNTH_TILES / str(ds.config.tile_level)
    try:
        tiles.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise DataError(f"Cannot write to {out}: {e}") from e

    csv_path = out / SYNTH_CSV
    records_frame(ds).to_csv(csv_path, index=False, encoding="utf-8", lineterminator="\n")
    ds.schema.save(out / SYNTH_SCHEMA)
    (out / SYNTH_TRUTH).write_text(json.dumps(ds.truth(), indent=2) + "\n", encoding="utf-8")

    for rec in ds.records:
        blob = encode_tile(ds.images[rec.record_id])
        atomic_write(tiles / f"{ds.quadkeys[rec.record_id]}.png", blob)

    return {"csv": csv_path, "schema": out / SYNTH_SCHEMA, "truth": out / SYNTH_TRUTH,
            "tiles": out / SYNTH_TILES}


def describe_numeric(ds: SynthDataset) -> pd.DataFrame:
    """
    Mean, standard deviation, minimum and maximum of every numeric attribute
    and the target, one row per variable.
    """
    frame = records_frame(ds)
    names = list(ds.schema.numeric_fields) + [ds.schema.target_field]
    stats = frame[names].agg(["mean", "std", "min", "max"]).T
    stats.columns = ["Mean", "Standard Deviation", "Minimum", "Maximum"]
    stats.index.name = "Variable"
    return stats.astype(np.float64)
