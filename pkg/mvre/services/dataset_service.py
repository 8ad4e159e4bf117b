# mvre/services/dataset_service.py

"""
Code file for housing DatasetService. Loads records and their tiles for the
train and eval commands.
"""

# Default libs
from pathlib import Path

# Dependencies
import numpy as np

# Deps from this project
from ..constants.constant import SYNTH_TRUTH
from ..objects.app_context import AppContext
from ..objects.config import Config
from ..objects.errors import DataError, ValidationError
from ..objects.geo import GeoPoint
from ..objects.house import DatasetSchema, HouseRecord
from ..utilities.logging_utility import Logger
from .geotile import DirectorySource, RemoteSource, TileFetcher, latlon_to_tile, tile_to_quadkey
from .tabular import GeocodingTable, load_records


class DatasetService:
    """
    Static helpers shared by the commands that read a dataset.
    """

    @staticmethod
    def load(ctx: AppContext, config: Config) -> tuple[DatasetSchema, list[HouseRecord]]:
        """
        Read the schema and the records named by --data / --schema.

        Raises:
            ValidationError: --data was not given
            DataError: the files do not exist
        """
        if not config.get("data"):
            raise ValidationError("--data is required (a CSV or a dataset directory)")

        csv_path, schema_path = Path(config.data), Path(config.schema)
        for path in (csv_path, schema_path):
            if not path.is_file():
                raise DataError(f"No such file: {path}")

        schema = DatasetSchema.load(schema_path)
        geocoder = GeocodingTable.load(Path(config.geocode)) if config.get("geocode") else None
        records = load_records(csv_path, schema, geocoder)
        if not records:
            raise DataError(f"{csv_path} holds no records")

        ctx.logger.log(Logger.INFO, f"Loaded {len(records)} records from {csv_path}")
        if geocoder is not None:
            ctx.logger.log(Logger.DEBUG, f"Geocoding table with {len(geocoder)} addresses")
        return schema, records


    @staticmethod
    def data_source(config: Config) -> str:
        """ "synthetic", "csv+tilestore" or "csv" for the run manifest """
        if (Path(config.data).parent / SYNTH_TRUTH).is_file():
            return "synthetic"
        return "csv+tilestore" if DatasetService.image_source(config) is not None else "csv"


    @staticmethod
    def image_source(config: Config) -> DirectorySource | RemoteSource | None:
        """
        The local tile store when --tiles is set, otherwise the remote endpoint
        when one is configured, otherwise None.
        """
        if config.get("tiles"):
            root = Path(config.tiles)
            if not root.is_dir():
                raise DataError(f"Tile store {root} is not a directory")
            return DirectorySource(root)

        if config.get("tile_endpoint"):
            cache = Path(config.tile_cache) if config.get("tile_cache") else Path(config.out) / "tile-cache"
            return RemoteSource(config.tile_endpoint, cache, retries=int(config.retries),
                backoff=float(config.backoff))
        return None


    @staticmethod
    def load_images(ctx: AppContext, config: Config, records: list[HouseRecord],
                    source: DirectorySource | RemoteSource) -> dict[str, np.ndarray]:
        """
        One image per record with coordinates: the tile at the configured
        level that contains the record's location. Records without
        coordinates or without a tile at the source get no image.
        """
        level = int(config.tile_level)
        quadkeys: dict[str, str] = {}
        for record in records:
            if record.geo is None:
                continue
            quadkeys[record.record_id] = DatasetService.quadkey_of(record.geo, level)

        fetcher = TileFetcher(ctx, source, image_size=int(config.image_size),
            workers=int(config.fetch_workers))
        tiles = fetcher.fetch_available(list(quadkeys.values()))

        images = {rid: tiles[q] for rid, q in quadkeys.items() if q in tiles}
        ctx.logger.log(Logger.INFO, f"Images for {len(images)}/{len(records)} records "
            f"({len(tiles)} distinct tiles, {fetcher.stats.requests} requests, "
            f"{fetcher.stats.retries} retries, {fetcher.stats.disk_hits} disk cache hits)")
        return images


    @staticmethod
    def quadkey_of(point: GeoPoint, level: int) -> str:
        return str(tile_to_quadkey(latlon_to_tile(point, level)))
