# mvre/services/geotile/tile_math.py

"""
Web-mercator tile arithmetic: point -> tile, tile <-> quadkey, tile
bounds and ground resolution. All functions are pure.
"""

# Default libs
import math

# Deps from this project
from ...constants.constant import EARTH_RADIUS_M, TILE_SIZE_PX, MAX_LATITUDE
from ...objects.geo import GeoPoint, Quadkey, TileCoord, check_level


def map_size_px(level: int) -> int:
    return TILE_SIZE_PX << level


def latlon_to_pixel(p: GeoPoint, level: int) -> tuple[float, float]:
    """ Global pixel coordinates of a point, clipped to the map """
    check_level(level)
    size = map_size_px(level)
    sin_lat = math.sin(math.radians(p.lat))
    px = (p.lon + 180.0) / 360.0 * size
    py = (0.5 - math.log((1 + sin_lat) / (1 - sin_lat)) / (4 * math.pi)) * size
    clip = lambda v: min(max(v, 0.0), size - 1.0)
    return clip(px), clip(py)


def latlon_to_tile(p: GeoPoint, level: int) -> TileCoord:
    """ The grid tile containing the point """
    px, py = latlon_to_pixel(p, level)
    return TileCoord(int(px // TILE_SIZE_PX), int(py // TILE_SIZE_PX), level)


def tile_to_quadkey(t: TileCoord) -> Quadkey:
    """ Interleave the bits of x and y, most significant level first """
    digits = []
    for i in range(t.level, 0, -1):
        mask = 1 << (i - 1)
        digit = 0
        if t.x & mask:
            digit += 1
        if t.y & mask:
            digit += 2
        digits.append(str(digit))
    return Quadkey("".join(digits))


def quadkey_to_tile(q: Quadkey | str) -> TileCoord:
    """ Inverse of tile_to_quadkey; invalid digits raise ValidationError """
    q = q if isinstance(q, Quadkey) else Quadkey(str(q))
    x = y = 0
    for i, ch in enumerate(q.digits):
        mask = 1 << (q.level - 1 - i)
        digit = int(ch)
        if digit & 1:
            x |= mask
        if digit & 2:
            y |= mask
    return TileCoord(x, y, q.level)


def _mercator_lat(y_fraction: float) -> float:
    return math.degrees(math.atan(math.sinh(math.pi * (1 - 2 * y_fraction))))


def tile_bounds(t: TileCoord) -> tuple[float, float, float, float]:
    """
    Geographic box of a tile as (south, west, north, east) in degrees.
    """
    n = 1 << t.level
    west = t.x / n * 360.0 - 180.0
    east = (t.x + 1) / n * 360.0 - 180.0
    north = _mercator_lat(t.y / n)
    south = _mercator_lat((t.y + 1) / n)
    return south, west, north, east


def tile_center(t: TileCoord) -> GeoPoint:
    _, west, _, east = tile_bounds(t)
    lat = _mercator_lat((t.y + 0.5) / (1 << t.level))
    return GeoPoint(min(max(lat, -MAX_LATITUDE), MAX_LATITUDE), (west + east) / 2)


def ground_resolution(lat: float, level: int) -> float:
    """
    Meters of ground per pixel: 2*pi*R*cos(lat) / (256 * 2^level).
    """
    check_level(level)
    lat = min(max(lat, -MAX_LATITUDE), MAX_LATITUDE)
    return 2 * math.pi * EARTH_RADIUS_M * math.cos(math.radians(lat)) / map_size_px(level)
