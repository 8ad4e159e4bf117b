# mvre/services/synthbench/rendering.py

"""
Disk rendering of the synthetic satellite images and its independent
counting oracle.
"""

# Dependencies
import numpy as np
from scipy import ndimage

# Deps from this project
from ...objects.errors import ValidationError


GRID = 4                # disks sit in distinct cells of a GRID x GRID layout
MAX_DISKS = 10
BRIGHT_THRESHOLD = 0.5  # on the green channel


def disk_radius(size: int) -> int:
    return max(1, (size // GRID) // 4)


def disk_offsets(radius: int) -> np.ndarray:
    """ (dy, dx) pixel offsets of a rasterized disk centered on a pixel """
    r = np.arange(-radius, radius + 1)
    dy, dx = np.meshgrid(r, r, indexing="ij")
    inside = dy ** 2 + dx ** 2 <= radius ** 2
    return np.stack([dy[inside], dx[inside]], axis=1)


def disk_area(size: int) -> int:
    return int(disk_offsets(disk_radius(size)).shape[0])


def disk_count(q: float) -> int:
    """ round(10 q) with halves rounded up """
    return int(np.floor(MAX_DISKS * q + 0.5))


def render_disks(k: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """
    uint8 (size, size, 3) image: dark noisy background and k green-dominant
    disks, each inside its own grid cell at a jittered integer center.
    """
    if not 0 <= k <= MAX_DISKS:
        raise ValidationError(f"Disk count must lie in [0, {MAX_DISKS}], got {k}")

    image = rng.integers(0, 39, size=(size, size, 3)).astype(np.uint8)
    cell = size // GRID
    radius = disk_radius(size)
    offsets = disk_offsets(radius)

    cells = rng.permutation(GRID * GRID)[:k]
    for c in cells:
        row, col = divmod(int(c), GRID)
        cy = row * cell + int(rng.integers(radius, cell - radius))
        cx = col * cell + int(rng.integers(radius, cell - radius))
        ys, xs = cy + offsets[:, 0], cx + offsets[:, 1]
        image[ys, xs, 0] = rng.integers(50, 100)
        image[ys, xs, 1] = rng.integers(210, 256)
        image[ys, xs, 2] = rng.integers(50, 100)
    return image


def oracle_quality(image: np.ndarray) -> float:
    """
    Estimate q from an image alone: the larger of the connected bright
    component count and the bright area over one disk's area, divided by 10.
    Touching disks merge into one component, which the area term recovers.
    """
    image = np.asarray(image)
    if image.dtype == np.uint8:
        image = image / 255.0
    bright = image[..., 1] > BRIGHT_THRESHOLD
    _, components = ndimage.label(bright)
    by_area = int(np.floor(bright.sum() / disk_area(image.shape[0]) + 0.5))
    return min(max(components, by_area), MAX_DISKS) / MAX_DISKS
