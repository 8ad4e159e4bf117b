# mvre/objects/run_manifest.py

"""
Code file for housing RunManifest.
"""

# Default libs
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

# Deps from this project
from .errors import DataError


RUN_MANIFEST_FILE = "run_manifest.json"


@dataclass
class RunManifest:
    """
    Record of one `mvre train` invocation.

    Attributes:
        config_digest: digest over every result-affecting setting
        settings: the resolved values the digest was computed from
        data_source: "synthetic" or "csv+tilestore" (or "csv" without images)
        artifacts: artifact directory names, in training order
    """

    config_digest: str
    strategies: list[str]
    seeds: list[int]
    data_source: str
    out: str
    settings: dict[str, Any] = field(default_factory=dict)
    artifacts: list[str] = field(default_factory=list)

    def to_dict(self, include_timestamp: bool = True) -> dict[str, Any]:
        d = {
            "config_digest": self.config_digest,
            "strategies": list(self.strategies),
            "seeds": list(self.seeds),
            "data_source": self.data_source,
            "out": self.out,
            "settings": dict(sorted(self.settings.items())),
            "artifacts": list(self.artifacts),
        }
        if include_timestamp:
            d["created_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return d

    def save(self, directory: Path) -> Path:
        path = Path(directory) / RUN_MANIFEST_FILE
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str) + "\n",
                encoding="utf-8")
        except OSError as e:
            raise DataError(f"Cannot write {path}: {e}") from e
        return path
