# mvre/services/tiles_service.py

"""
Code file for housing TilesService. Backs `mvre tiles quadkey|resolution|bbox`.
"""

# Deps from this project
from ..constants.constant import REFERENCE_FOOTPRINT_NOTE, TILE_SIZE_PX
from ..objects.app_context import AppContext
from ..objects.config import Config
from ..objects.geo import GeoPoint
from .geotile import ground_resolution, latlon_to_tile, tile_bounds, tile_to_quadkey


class TilesService:
    """
    Prints tile coordinates, quadkeys, ground resolution and tile footprints.
    """

    @staticmethod
    def run(ctx: AppContext, config: Config) -> None:
        level = int(config.tile_level)
        action = config.tiles_action

        if action == "resolution":
            # Longitude does not affect the resolution, but the latitude is still validated
            point = GeoPoint(float(config.lat), 0.0)
            TilesService._write_resolution(ctx, point.lat, level)
            return

        point = GeoPoint(float(config.lat), float(config.lon))
        tile = latlon_to_tile(point, level)
        if action == "quadkey":
            ctx.output_buffer.write(f"tile: ({tile.x}, {tile.y}) level {level}")
            ctx.output_buffer.write(f"quadkey: {tile_to_quadkey(tile)}")
            TilesService._write_resolution(ctx, point.lat, level)
        else:
            south, west, north, east = tile_bounds(tile)
            ctx.output_buffer.write(f"tile: ({tile.x}, {tile.y}) level {level}")
            ctx.output_buffer.write(f"south: {south:.6f}")
            ctx.output_buffer.write(f"west: {west:.6f}")
            ctx.output_buffer.write(f"north: {north:.6f}")
            ctx.output_buffer.write(f"east: {east:.6f}")


    @staticmethod
    def _write_resolution(ctx: AppContext, lat: float, level: int) -> None:
        resolution = ground_resolution(lat, level)
        ctx.output_buffer.write(f"ground resolution: {resolution:.4f} m/px")
        ctx.output_buffer.write(f"footprint: {resolution * TILE_SIZE_PX:.1f} m per "
            f"{TILE_SIZE_PX} px tile ({REFERENCE_FOOTPRINT_NOTE})")
