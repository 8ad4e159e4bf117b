# mvre/services/geotile/tile_fetcher.py

"""
Satellite tile acquisition from a local tile store or a remote endpoint,
producing normalized H x W x 3 image tensors.
"""

# Default libs
import io
import os
import tempfile
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

# Dependencies
import numpy as np
import requests
from PIL import Image, UnidentifiedImageError

# Deps from this project
from ...objects.app_context import AppContext
from ...objects.errors import (MalformedTileError, MissingTileError, RetryExhaustedError,
    ValidationError)
from ...objects.geo import Quadkey
from ...utilities.logging_utility import Logger
from .tile_cache import TileMemoryCache


@dataclass(frozen=True)
class DirectorySource:
    """ Tile store laid out as <root>/<level>/<quadkey>.png (flat <root>/<quadkey>.png also read) """
    root: Path

    def path_for(self, q: Quadkey) -> Path | None:
        for candidate in (Path(self.root) / str(q.level) / f"{q}.png", Path(self.root) / f"{q}.png"):
            if candidate.is_file():
                return candidate
        return None


@dataclass(frozen=True)
class RemoteSource:
    """
    HTTP endpoint addressed by a URL template containing "{quadkey}".
    Downloads are cached under <cache_dir>/<level>/<quadkey>.png.
    """
    template: str
    cache_dir: Path
    retries: int = 3
    backoff: float = 0.5
    timeout: float = 10.0

    def __post_init__(self):
        if "{quadkey}" not in self.template:
            raise ValidationError(f"Tile URL template lacks '{{quadkey}}': {self.template}")
        if self.retries < 0:
            raise ValidationError(f"retries must be >= 0, got {self.retries}")

    def cache_path(self, q: Quadkey) -> Path:
        return Path(self.cache_dir) / str(q.level) / f"{q}.png"


@dataclass
class FetchStats:
    requests: int = 0
    retries: int = 0
    disk_hits: int = 0


def decode_tile(blob: bytes, image_size: int | None = None, where: str = "tile") -> np.ndarray:
    """
    PNG/JPEG bytes -> float64 (H, W, 3) with values in [0, 1]. Tiles whose
    size differs from image_size are resized bilinearly.
    """
    try:
        with Image.open(io.BytesIO(blob)) as img:
            img = img.convert("RGB")
            if image_size and img.size != (image_size, image_size):
                img = img.resize((image_size, image_size), Image.BILINEAR)
            arr = np.asarray(img, dtype=np.float64)
    except (UnidentifiedImageError, OSError, ValueError) as e:
        raise MalformedTileError(f"Could not decode {where}: {e}") from e
    return arr / 255.0


def encode_tile(image: np.ndarray) -> bytes:
    """ (H, W, 3) in [0, 1] -> PNG bytes """
    pixels = np.clip(np.rint(np.asarray(image) * 255.0), 0, 255).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(pixels, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def atomic_write(path: Path, blob: bytes) -> None:
    """ Write to a temp file in the target directory, then rename over """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tile-")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(blob)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


class TileFetcher:
    """
    Fetches tiles from one source with a memory cache, a disk cache for
    remote sources, retry with exponential backoff and a bounded worker pool.
    """

    def __init__(self, ctx: AppContext | None, source: DirectorySource | RemoteSource,
                 image_size: int | None = 32, workers: int = 4):
        if workers < 1:
            raise ValidationError(f"workers must be >= 1, got {workers}")
        self.ctx = ctx
        self.source = source
        self.image_size = image_size
        self.workers = workers
        self.memory = TileMemoryCache()
        self.stats = FetchStats()
        self._stats_lock = threading.Lock()
        self._session = requests.Session() if isinstance(source, RemoteSource) else None


    def _log(self, level: int, message: str) -> None:
        if self.ctx is not None:
            self.ctx.logger.log(level, message)


    def fetch(self, q: Quadkey | str) -> np.ndarray:
        q = q if isinstance(q, Quadkey) else Quadkey(str(q))
        cached = self.memory.get(q.digits)
        if cached is not None:
            return cached

        if isinstance(self.source, DirectorySource):
            tile = self._fetch_directory(q)
        else:
            tile = self._fetch_remote(q)
        self.memory.put(q.digits, tile)
        return tile


    def fetch_many(self, quadkeys: list[Quadkey | str]) -> list[np.ndarray]:
        """
        Fetch in parallel with at most `workers` requests in flight. Results
        follow the input order; the first failure is raised.
        """
        if self.workers == 1 or len(quadkeys) <= 1:
            return [self.fetch(q) for q in quadkeys]
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(self.fetch, quadkeys))


    def fetch_available(self, quadkeys: list[Quadkey | str]) -> dict[str, np.ndarray]:
        """
        Like fetch_many over the distinct quadkeys, but a tile missing at the
        source is logged and left out instead of failing the batch.
        """
        distinct = sorted({str(q) for q in quadkeys})

        def _one(q: str) -> np.ndarray | None:
            try:
                return self.fetch(q)
            except MissingTileError as e:
                self._log(Logger.WARNING, str(e))
                return None

        if self.workers == 1 or len(distinct) <= 1:
            tiles = [_one(q) for q in distinct]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                tiles = list(pool.map(_one, distinct))
        return {q: t for q, t in zip(distinct, tiles) if t is not None}


    def _fetch_directory(self, q: Quadkey) -> np.ndarray:
        path = self.source.path_for(q)
        if path is None:
            raise MissingTileError(f"Tile {q} not found in store {self.source.root}")
        return decode_tile(path.read_bytes(), self.image_size, where=str(path))


    def _fetch_remote(self, q: Quadkey) -> np.ndarray:
        src: RemoteSource = self.source
        cache_path = src.cache_path(q)
        if cache_path.is_file():
            with self._stats_lock:
                self.stats.disk_hits += 1
            return decode_tile(cache_path.read_bytes(), self.image_size, where=str(cache_path))

        url = src.template.format(quadkey=q.digits)
        for attempt in range(src.retries + 1):
            with self._stats_lock:
                self.stats.requests += 1
            try:
                response = self._session.get(url, timeout=src.timeout)
                status = response.status_code
            except requests.RequestException as e:
                status, response = None, e

            if status == 404:
                raise MissingTileError(f"Tile {q} does not exist at {url}")
            if status == 200:
                tile = decode_tile(response.content, self.image_size, where=url)
                atomic_write(cache_path, response.content)
                return tile

            if attempt < src.retries:
                with self._stats_lock:
                    self.stats.retries += 1
                delay = src.backoff * (2 ** attempt)
                self._log(Logger.WARNING, f"Tile {q}: transient failure ({status or response}), "
                    f"retry {attempt + 1}/{src.retries} in {delay:.2f}s")
                time.sleep(delay)

        raise RetryExhaustedError(f"Tile {q}: gave up after {src.retries} retries ({url})")


def fetch_tile(source: DirectorySource | RemoteSource, q: Quadkey | str,
               image_size: int | None = None) -> np.ndarray:
    """ One-shot fetch without a shared cache """
    return TileFetcher(None, source, image_size=image_size, workers=1).fetch(q)
