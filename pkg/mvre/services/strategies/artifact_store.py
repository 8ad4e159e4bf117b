# mvre/services/strategies/artifact_store.py

"""
Artifact directories: manifest JSON, numkit parameter snapshot, forest JSON,
normalization statistics and (for interpretable strategies) coefficients.
"""

# Default libs
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

# Deps from this project
from ... import __version__
from ...constants.constant import (COEFFICIENTS_FILE, FOREST_FILE, MANIFEST_FILE, NORM_STATS_FILE,
    PARAMS_FILE)
from ...objects.errors import ArtifactMismatchError, DataError, ShapeError
from ...objects.house import DatasetSchema, NormStats
from ...objects.strategy import StrategyId, TrainConfig
from ..forest import load_forest, save_forest
from ..numkit import Network, load_parameters, save_parameters
from .artifact import TrainedArtifact
from .linear_regression import LinearFit
from .prediction import extract_coefficients


def _write_json(path: Path, payload: Any) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _read_json(path: Path) -> Any:
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ArtifactMismatchError(f"Could not read {path}: {e}") from e


def save_artifact(artifact: TrainedArtifact, directory: Path, config_digest: str = "",
                  include_timestamp: bool = True) -> Path:
    """
    Write the artifact into `directory` (created if needed) and return the
    manifest path. The manifest is the only file carrying a timestamp.
    """
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise DataError(f"Cannot create artifact directory {directory}: {e}") from e

    net_names = sorted(artifact.networks)
    tensors = [t for name in net_names for t in artifact.networks[name].parameters()]
    if tensors:
        save_parameters(directory / PARAMS_FILE, tensors)
    if artifact.forest is not None:
        save_forest(directory / FOREST_FILE, artifact.forest)
    _write_json(directory / NORM_STATS_FILE, artifact.stats.to_dict())
    if artifact.strategy.interpretable:
        _write_json(directory / COEFFICIENTS_FILE, extract_coefficients(artifact).to_dict())

    manifest = {
        "mvre_version": __version__,
        "strategy": artifact.strategy.value,
        "family": artifact.strategy.family,
        "interpretable": artifact.strategy.interpretable,
        "seed": artifact.config.seed,
        "split_id": artifact.split_id,
        "config": artifact.config.to_dict(),
        "config_digest": config_digest,
        "target_transform": artifact.target_transform,
        "schema": artifact.schema.to_dict(),
        "columns": list(artifact.columns),
        "linear": {name: fit.to_dict() for name, fit in sorted(artifact.linear.items())},
        "networks": [{
            "name": name,
            "tensors": len(artifact.networks[name].parameters()),
            "param_count": artifact.networks[name].param_count(),
            "architecture": artifact.networks[name].describe(),
        } for name in net_names],
        "forest": FOREST_FILE if artifact.forest is not None else None,
        "history": artifact.history,
        "notes": artifact.notes,
        "val_metrics": artifact.val_metrics,
    }
    if include_timestamp:
        manifest["created_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")

    manifest_path = directory / MANIFEST_FILE
    _write_json(manifest_path, manifest)
    return manifest_path


def read_manifest(directory: Path) -> dict[str, Any]:
    path = Path(directory) / MANIFEST_FILE
    if not path.is_file():
        raise ArtifactMismatchError(f"No {MANIFEST_FILE} in {directory}")
    return _read_json(path)


def load_artifact(directory: Path) -> TrainedArtifact:
    """ Rebuild a TrainedArtifact written by save_artifact """
    directory = Path(directory)
    manifest = read_manifest(directory)
    try:
        strategy = StrategyId(manifest["strategy"])
        config = TrainConfig.from_dict(manifest["config"])
        schema = DatasetSchema.from_dict(manifest["schema"])

        networks: dict[str, Network] = {}
        if manifest["networks"]:
            tensors = load_parameters(directory / PARAMS_FILE)
            offset = 0
            for entry in manifest["networks"]:
                net = Network.from_description(entry["architecture"])
                count = int(entry["tensors"])
                net.load_parameters(tensors[offset:offset + count])
                offset += count
                networks[entry["name"]] = net
            if offset != len(tensors):
                raise ArtifactMismatchError(f"{PARAMS_FILE} holds {len(tensors)} tensors, "
                    f"manifest accounts for {offset}")

        forest = load_forest(directory / FOREST_FILE) if manifest.get("forest") else None
        stats = NormStats.from_dict(_read_json(directory / NORM_STATS_FILE))

        return TrainedArtifact(
            strategy=strategy, config=config, schema=schema,
            columns=list(manifest["columns"]), stats=stats, split_id=manifest["split_id"],
            target_transform=manifest.get("target_transform", "log"),
            linear={name: LinearFit.from_dict(d) for name, d in manifest["linear"].items()},
            networks=networks, forest=forest,
            history=manifest.get("history", {}), notes=manifest.get("notes", {}),
            val_metrics=manifest.get("val_metrics", {}),
        )
    except (KeyError, TypeError, ValueError, ShapeError) as e:
        raise ArtifactMismatchError(f"Malformed artifact in {directory}: {e}") from e
    except FileNotFoundError as e:
        raise ArtifactMismatchError(f"Incomplete artifact in {directory}: {e}") from e


def find_artifacts(root: Path) -> list[Path]:
    """
    `root` itself when it is an artifact directory, otherwise every direct
    (or artifacts/) subdirectory holding a manifest, sorted by name.
    """
    root = Path(root)
    if (root / MANIFEST_FILE).is_file():
        return [root]
    for base in (root / "artifacts", root):
        if base.is_dir():
            found = sorted(p for p in base.iterdir() if (p / MANIFEST_FILE).is_file())
            if found:
                return found
    raise ArtifactMismatchError(f"No artifacts found under {root}")
