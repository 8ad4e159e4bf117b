# mvre/services/numkit/snapshot.py

"""
Flat binary layout for parameter snapshots:

    magic "MVRE" | version u32
    per tensor:  rank u32 | dims u32 x rank | data f64 x prod(dims)

All integers and floats are little-endian.
"""

# Default libs
import os
import struct
import tempfile
from pathlib import Path

# Dependencies
import numpy as np

# Deps from this project
from ...constants.constant import SNAPSHOT_MAGIC, SNAPSHOT_VERSION
from ...objects.errors import DataError
from ...objects.tensor import Tensor


def to_bytes(tensors: list[Tensor]) -> bytes:
    chunks = [SNAPSHOT_MAGIC, struct.pack("<I", SNAPSHOT_VERSION)]
    for t in tensors:
        chunks.append(struct.pack(f"<I{len(t.shape)}I", len(t.shape), *t.shape))
        chunks.append(t.data.astype("<f8").tobytes())
    return b"".join(chunks)


def from_bytes(blob: bytes) -> list[Tensor]:
    if blob[:4] != SNAPSHOT_MAGIC:
        raise DataError("Not an mvre parameter snapshot (bad magic)")
    (version,) = struct.unpack_from("<I", blob, 4)
    if version != SNAPSHOT_VERSION:
        raise DataError(f"Unsupported snapshot version {version}")

    tensors: list[Tensor] = []
    offset = 8
    try:
        while offset < len(blob):
            (rank,) = struct.unpack_from("<I", blob, offset)
            dims = struct.unpack_from(f"<{rank}I", blob, offset + 4)
            offset += 4 + 4 * rank
            count = int(np.prod(dims))
            data = np.frombuffer(blob, dtype="<f8", count=count, offset=offset)
            offset += 8 * count
            tensors.append(Tensor(data.astype(np.float64).reshape(dims)))
    except (struct.error, ValueError) as e:
        raise DataError(f"Truncated parameter snapshot: {e}") from e
    return tensors


def save_parameters(path: Path, tensors: list[Tensor]) -> None:
    """ Atomic write: temp file in the same directory, then rename """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".params-")
    with os.fdopen(fd, "wb") as f:
        f.write(to_bytes(tensors))
    os.replace(tmp, path)


def load_parameters(path: Path) -> list[Tensor]:
    return from_bytes(Path(path).read_bytes())
