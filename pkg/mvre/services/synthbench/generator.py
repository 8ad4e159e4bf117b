# mvre/services/synthbench/generator.py

"""
Synthetic house records and images drawn from a known price law.
"""

# Default libs
import math

# Dependencies
import numpy as np

# Deps from this project
from ...constants.constant import INTERCEPT_NAME
from ...objects.geo import GeoPoint, TileCoord
from ...objects.house import HouseRecord
from ...objects.synth import NUMERIC_RANGES, SynthConfig, SynthDataset
from ..geotile import latlon_to_tile, tile_center, tile_to_quadkey
from .rendering import disk_count, render_disks


# Grid of tiles the synthetic houses are placed on
ANCHOR = GeoPoint(35.5950, -82.5515)


def _tabular_stream(seed: int) -> np.random.Generator:
    # Kept apart from the per-record image streams (seed XOR index)
    return np.random.default_rng([seed, 0x5EED])


def _locality_bands(quality: np.ndarray, m: int) -> np.ndarray:
    """ Band j holds the records whose q rank falls in the j-th of m equal slices """
    order = np.argsort(quality, kind="stable")
    bands = np.empty(quality.size, dtype=np.int64)
    bands[order] = np.arange(quality.size) * m // quality.size
    return bands


def _tile_grid(n: int, level: int) -> list[TileCoord]:
    origin = latlon_to_tile(ANCHOR, level)
    width = math.ceil(math.sqrt(n))
    return [TileCoord(origin.x + i % width, origin.y + i // width, level) for i in range(n)]


def generate(config: SynthConfig) -> SynthDataset:
    """
    Draw x ~ U[0,1]^d_num, uniform categorical levels and q ~ U[0,1], apply
    the price law and render one image per record with round(10 q) disks.
    Byte-identical for identical configs.
    """
    rng = _tabular_stream(config.seed)
    n = config.n

    latent_num = rng.uniform(0.0, 1.0, size=(n, config.d_num))
    levels = {name: rng.integers(0, size, size=n) for name, size in config.categoricals.items()}
    quality = rng.uniform(0.0, 1.0, size=n)
    noise = rng.normal(0.0, 1.0, size=n) * config.sigma

    blocks = [latent_num]
    for name, size in config.categoricals.items():
        onehot = np.zeros((n, size))
        onehot[np.arange(n), levels[name]] = 1.0
        blocks.append(onehot)
    latent = np.hstack(blocks) if blocks else np.zeros((n, 0))

    log_price = config.intercept + latent @ config.coefficients() + config.gamma * quality
    if config.interaction and config.d_num > 0:
        log_price = log_price + config.interaction_strength * (2 * latent_num[:, 0] - 1) * (2 * quality - 1)
    log_price = log_price + noise

    bands = _locality_bands(quality, config.localities)
    tiles = _tile_grid(n, config.tile_level)
    disks = np.array([disk_count(q) for q in quality], dtype=np.int64)

    records, images, quadkeys = [], {}, {}
    for i in range(n):
        record_id = f"H{i:05d}"
        values: dict[str, float | str] = {}
        for j, name in enumerate(config.numeric_fields):
            lo, hi = NUMERIC_RANGES[name]
            values[name] = lo + latent_num[i, j] * (hi - lo)
        for name in config.categoricals:
            values[name] = f"{name}_{levels[name][i]}"
        locality = f"L{bands[i]}"
        if config.locality_feature:
            values["locality"] = locality

        records.append(HouseRecord(record_id=record_id, values=values,
            target=float(np.exp(log_price[i])), geo=tile_center(tiles[i]), locality=locality))

        pixels = render_disks(int(disks[i]), config.image_size, np.random.default_rng(config.seed ^ i))
        images[record_id] = pixels / 255.0
        quadkeys[record_id] = str(tile_to_quadkey(tiles[i]))

    return SynthDataset(config=config, schema=config.schema(), records=records, latent=latent,
        log_price=log_price, quality=quality, disks=disks, images=images, quadkeys=quadkeys)


def true_coefficients(config: SynthConfig, columns: list[str]) -> dict[str, float]:
    """ Generative coefficients by encoded column name, intercept included """
    out = {INTERCEPT_NAME: config.intercept}
    out.update(dict(zip(columns, config.coefficients().tolist())))
    return out


def bayes_mae(config: SynthConfig | float) -> float:
    """ Lowest achievable log-space MAE under Normal(0, sigma^2) noise: sigma * sqrt(2 / pi) """
    sigma = config.sigma if isinstance(config, SynthConfig) else float(config)
    return sigma * math.sqrt(2.0 / math.pi)
