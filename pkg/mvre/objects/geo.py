# mvre/objects/geo.py

"""
Code file for housing GeoPoint, TileCoord and Quadkey.
"""

# Default libs
import math
from dataclasses import dataclass

# Deps from this project
from ..constants.constant import MAX_LATITUDE, MIN_LEVEL, MAX_LEVEL
from .errors import LevelError, ValidationError


def check_level(level: int) -> int:
    if not isinstance(level, int) or not MIN_LEVEL <= level <= MAX_LEVEL:
        raise LevelError(f"Zoom level must be an integer in [{MIN_LEVEL}, {MAX_LEVEL}], got {level}")
    return level


@dataclass(frozen=True)
class GeoPoint:
    """ WGS84 point. Latitude is limited to the web-mercator band. """

    lat: float
    lon: float

    def __post_init__(self):
        if not (math.isfinite(self.lat) and math.isfinite(self.lon)):
            raise ValidationError(f"Coordinates must be finite, got ({self.lat}, {self.lon})")
        if not -MAX_LATITUDE <= self.lat <= MAX_LATITUDE:
            raise ValidationError(
                f"Latitude {self.lat} outside [-{MAX_LATITUDE}, {MAX_LATITUDE}]")
        if not -180.0 <= self.lon < 180.0:
            raise ValidationError(f"Longitude {self.lon} outside [-180, 180)")


@dataclass(frozen=True)
class TileCoord:
    x: int
    y: int
    level: int

    def __post_init__(self):
        check_level(self.level)
        n = 1 << self.level
        if not (0 <= self.x < n and 0 <= self.y < n):
            raise ValidationError(f"Tile ({self.x}, {self.y}) outside level {self.level} grid")


@dataclass(frozen=True)
class Quadkey:
    """ Base-4 tile address, one digit per level """

    digits: str

    def __post_init__(self):
        if not self.digits or any(c not in "0123" for c in self.digits):
            raise ValidationError(f"Invalid quadkey '{self.digits}'")
        check_level(len(self.digits))

    @property
    def level(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return self.digits
