# mvre/services/eval_service.py

"""
Code file for housing EvalService. Backs `mvre eval`.
"""

# Default libs
from pathlib import Path

# Deps from this project
from ..objects.app_context import AppContext
from ..objects.config import Config
from ..objects.errors import ArtifactMismatchError, DataError, ValidationError
from ..objects.eval_report import EvalReport
from ..objects.house import DatasetSchema, HouseRecord
from ..objects.strategy import StrategyId
from ..utilities.logging_utility import Logger
from .copy_service import CopyService
from .dataset_service import DatasetService
from .evaluation import emit, evaluate
from .strategies import TrainedArtifact, encode_view, find_artifacts, load_artifact, read_manifest
from .tabular import plan_split


REPORT_NAME = "report"


class EvalService:
    """
    Evaluates every artifact on the test partition of the split it was
    trained with and writes one report document.
    """

    @staticmethod
    def run(ctx: AppContext, config: Config) -> list[EvalReport]:
        root = Path(config.get("artifacts") or config.out)
        directories = find_artifacts(root)
        loaded = [(load_artifact(d), read_manifest(d).get("config_digest", "")) for d in directories]
        ctx.logger.log(Logger.INFO, f"Loaded {len(loaded)} artifacts from {root}")

        schema, records = DatasetService.load(ctx, config)
        images = None
        if any(EvalService._uses_images(artifact) for artifact, _ in loaded):
            source = DatasetService.image_source(config)
            if source is None:
                raise ValidationError("image source required to evaluate image strategies: "
                    "pass --tiles or set MVRE_TILE_ENDPOINT")
            images = DatasetService.load_images(ctx, config, records, source)

        reports = []
        for artifact, digest in loaded:
            reports.append(EvalService.evaluate_artifact(ctx, config, artifact, digest,
                schema, records, images))

        document = emit(reports, config.format, reference=bool(config.get("reference")))
        path = EvalService._write_report(config, document)
        ctx.logger.log(Logger.INFO, f"Report written to {path}")

        ctx.output_buffer.write(document.rstrip("\n"))
        if config.get("copy"):
            CopyService.run(ctx, config, document)
        return reports


    @staticmethod
    def evaluate_artifact(ctx: AppContext, config: Config, artifact: TrainedArtifact, digest: str,
                          schema: DatasetSchema, records: list[HouseRecord], images) -> EvalReport:
        """
        Rebuild the artifact's test partition from its split and seed, then
        evaluate on it.

        Raises:
            ArtifactMismatchError: the schema or the split differs from training
        """
        if artifact.schema != schema:
            raise ArtifactMismatchError(f"{artifact.name} was trained on a different schema")

        split, fraction = EvalService.split_for(config, artifact)
        plan = plan_split(records, split, fraction, artifact.config.seed)
        if plan.split_id != artifact.split_id:
            raise ArtifactMismatchError(f"{artifact.name} was trained on split "
                f"'{artifact.split_id}', evaluation asked for '{plan.split_id}'")

        test = encode_view(plan.test, artifact.schema, artifact.stats, images)
        report = evaluate(artifact, test, config_digest=digest)
        ctx.logger.log(Logger.INFO, f"{artifact.name}: test MAE {report.mae:,.0f}, "
            f"RMSE {report.rmse:,.0f} on {report.n} records")
        return report


    @staticmethod
    def split_for(config: Config, artifact: TrainedArtifact) -> tuple[str, float]:
        """
        The split requested on the command line, otherwise the one recorded
        in the artifact ("random:<fraction>" or "geo:<names>").
        """
        recorded_kind, _, recorded_arg = artifact.split_id.partition(":")
        fraction = float(recorded_arg) if recorded_kind == "random" else float(config.train_fraction)

        requested = config.cli.get("split")
        if requested:
            return requested, fraction
        return ("random" if recorded_kind == "random" else artifact.split_id), fraction


    @staticmethod
    def _uses_images(artifact: TrainedArtifact) -> bool:
        if artifact.strategy == StrategyId.M4_HYBRID:
            return bool(artifact.notes.get("image_branch", True))
        return artifact.strategy.needs_images


    @staticmethod
    def _write_report(config: Config, document: str) -> Path:
        path = Path(config.out) / "reports" / f"{REPORT_NAME}.{config.format}"
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(document, encoding="utf-8")
        except OSError as e:
            raise DataError(f"Cannot write report {path}: {e}") from e
        return path
