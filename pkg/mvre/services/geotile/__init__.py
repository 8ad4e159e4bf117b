# mvre/services/geotile/__init__.py

"""
geotile: web-mercator tile math, quadkeys and tile acquisition.
"""

from .tile_math import (latlon_to_pixel, latlon_to_tile, tile_to_quadkey, quadkey_to_tile,
    tile_bounds, tile_center, ground_resolution)
from .tile_fetcher import (DirectorySource, RemoteSource, TileFetcher, FetchStats, fetch_tile,
    decode_tile, encode_tile, atomic_write)
from .mock_tile_server import MockTileServer

__all__ = [
    'latlon_to_pixel', 'latlon_to_tile', 'tile_to_quadkey', 'quadkey_to_tile',
    'tile_bounds', 'tile_center', 'ground_resolution',
    'DirectorySource', 'RemoteSource', 'TileFetcher', 'FetchStats', 'fetch_tile',
    'decode_tile', 'encode_tile', 'atomic_write', 'MockTileServer',
]
