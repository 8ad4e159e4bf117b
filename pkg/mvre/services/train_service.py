# mvre/services/train_service.py

"""
Code file for housing TrainService. Backs `mvre train`.
"""

# Default libs
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

# Dependencies
from rich.table import Table
from rich import box

# Deps from this project
from ..objects.app_context import AppContext
from ..objects.config import Config
from ..objects.errors import ValidationError
from ..objects.run_manifest import RunManifest
from ..objects.strategy import StrategyId, TrainConfig
from ..utilities.functions_utility import render_renderable
from ..utilities.logging_utility import Logger
from .dataset_service import DatasetService
from .evaluation import currency_metrics
from .strategies import (StrategyDataset, TrainedArtifact, build_dataset, predict_log,
    save_artifact, train_m4_hybrid, train_strategy)
from .tabular import plan_split


def train_one(strategy: StrategyId, ds: StrategyDataset, config: TrainConfig, directory: Path,
              config_digest: str, image_branch: bool = True,
              logger: Logger | None = None) -> TrainedArtifact:
    """
    Train one strategy, record its validation metrics and store it in
    `directory`. Module level so worker processes can run it.
    """
    start = time.time()
    if strategy == StrategyId.M4_HYBRID and not image_branch:
        artifact = train_m4_hybrid(ds, config, logger, image_branch=False)
    else:
        artifact = train_strategy(strategy, ds, config, logger)

    view = ds.val
    val_mae, val_rmse = currency_metrics(predict_log(artifact, view), view.require_target())
    artifact.val_metrics = {"mae": val_mae, "rmse": val_rmse, "n": view.n}

    save_artifact(artifact, directory, config_digest=config_digest)
    if logger is not None:
        logger.log(Logger.INFO, f"{artifact.name}: validation MAE {val_mae:,.0f}, "
            f"RMSE {val_rmse:,.0f} ({round((time.time() - start) * 1000, 2)} ms)")
    return artifact


def _train_in_worker(strategy: StrategyId, ds: StrategyDataset, config: TrainConfig,
                     directory: Path, config_digest: str, image_branch: bool):
    """ Runs in a worker process; returns the summary row and the worker's log """
    logger = Logger()
    artifact = train_one(strategy, ds, config, directory, config_digest, image_branch, logger)
    return TrainService.summary_row(artifact, directory), logger.get_records()


class TrainService:
    """
    Trains the requested strategies once per seed and stores every
    artifact under <out>/artifacts/<strategy>_seed<seed>/.
    """

    @staticmethod
    def run(ctx: AppContext, config: Config) -> RunManifest:
        strategies = TrainService.strategies(config)
        seeds = [int(s) for s in (config.get("seeds") or [config.seed])]
        image_branch = not config.get("no_image_branch")

        schema, records = DatasetService.load(ctx, config)
        needs_images = [s for s in strategies
            if s.needs_images and not (s == StrategyId.M4_HYBRID and not image_branch)]

        images = None
        if needs_images:
            source = DatasetService.image_source(config)
            if source is None:
                raise ValidationError(f"image source required for "
                    f"{', '.join(s.value for s in needs_images)}: pass --tiles or set "
                    f"MVRE_TILE_ENDPOINT")
            images = DatasetService.load_images(ctx, config, records, source)

        digest = config.digest()
        out = Path(config.out)
        tasks = []
        for seed in seeds:
            train_config = TrainConfig.from_config(config, seed=seed)
            plan = plan_split(records, config.split, float(config.train_fraction), seed)
            ctx.logger.log(Logger.INFO, f"Split {plan.split_id} seed {seed}: {len(plan.train)} train, "
                f"{len(plan.val)} validation, {len(plan.test)} test")
            ds = build_dataset(plan, schema, images)
            for strategy in strategies:
                directory = out / "artifacts" / f"{strategy.value}_seed{seed}"
                tasks.append((strategy, ds, train_config, directory, digest, image_branch))

        rows = TrainService._execute(ctx, tasks, int(config.jobs))

        manifest = RunManifest(
            config_digest=digest,
            strategies=[s.value for s in strategies],
            seeds=seeds,
            data_source=DatasetService.data_source(config),
            out=str(out),
            settings=config.resolved(),
            artifacts=[row[-1] for row in rows],
        )
        manifest.save(out)

        ctx.output_buffer.write(render_renderable(TrainService._table(rows)))
        ctx.output_buffer.write("")
        ctx.output_buffer.write(f"{len(rows)} artifacts written to {out / 'artifacts'} "
            f"(config digest {digest})")
        return manifest


    @staticmethod
    def strategies(config: Config) -> list[StrategyId]:
        model = config.get("model")
        if not model:
            raise ValidationError("--model is required (baseline, m1, m2, m3, m4, m5 or all)")
        if model == "all":
            return list(StrategyId)
        return [StrategyId.parse(model)]


    @staticmethod
    def _execute(ctx: AppContext, tasks: list[tuple], jobs: int) -> list[tuple[str, ...]]:
        """
        Train sequentially, or in up to `jobs` worker processes. Summary rows
        and worker logs come back in task order either way.
        """
        if jobs == 1 or len(tasks) == 1:
            rows = []
            for strategy, ds, train_config, directory, digest, image_branch in tasks:
                artifact = train_one(strategy, ds, train_config, directory, digest, image_branch,
                    ctx.logger)
                rows.append(TrainService.summary_row(artifact, directory))
            return rows

        ctx.logger.log(Logger.INFO, f"Training {len(tasks)} artifacts in {jobs} worker processes")
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_train_in_worker, *task) for task in tasks]
            results = [f.result() for f in futures]

        rows = []
        for row, records in results:
            for level, message in records:
                ctx.logger.log(level, message)
            rows.append(row)
        return rows


    @staticmethod
    def summary_row(artifact: TrainedArtifact, directory: Path) -> tuple[str, ...]:
        return (
            artifact.strategy.value,
            str(artifact.config.seed),
            artifact.split_id,
            f"{artifact.val_metrics['mae']:,.0f}",
            f"{artifact.val_metrics['rmse']:,.0f}",
            Path(directory).name,
        )


    @staticmethod
    def _table(rows: list[tuple[str, ...]]) -> Table:
        table = Table(title="Trained artifacts", box=box.SIMPLE_HEAD)
        table.add_column("Strategy")
        table.add_column("Seed", justify="right")
        table.add_column("Split")
        table.add_column("Val MAE", justify="right")
        table.add_column("Val RMSE", justify="right")
        table.add_column("Artifact")
        for row in rows:
            table.add_row(*row)
        return table
