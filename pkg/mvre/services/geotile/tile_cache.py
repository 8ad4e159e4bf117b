# mvre/services/geotile/tile_cache.py

"""
Bounded in-memory cache of decoded tiles, in front of the on-disk cache.
"""

# Default libs
import threading

# Dependencies
import numpy as np


class TileMemoryCache:
    """
    Quadkey -> decoded image tensor.

    When the limit is reached the cache is cleared and refilled, which keeps
    the bookkeeping trivial for the access pattern of one training run
    (every tile read a handful of times).
    """

    def __init__(self, max_cache_size: int = 50000):
        self.max_cache_size = max_cache_size
        self._tiles: dict[str, np.ndarray] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, quadkey: str) -> np.ndarray | None:
        with self._lock:
            tile = self._tiles.get(quadkey)
            if tile is None:
                self.misses += 1
            else:
                self.hits += 1
            return tile

    def put(self, quadkey: str, tile: np.ndarray) -> None:
        with self._lock:
            self._cache_with_limit(quadkey, tile)

    def _cache_with_limit(self, key: str, value: np.ndarray) -> None:
        """
        Add to cache with size limit management.
        """
        if len(self._tiles) >= self.max_cache_size:
            self._tiles.clear()
        value.setflags(write=False)
        self._tiles[key] = value

    def get_stats(self) -> dict:
        """
        Get cache statistics for debugging.
        """
        with self._lock:
            return {"tiles": len(self._tiles), "hits": self.hits, "misses": self.misses}

    def clear_all(self) -> None:
        with self._lock:
            self._tiles.clear()
