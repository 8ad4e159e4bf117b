# mvre/services/synth_service.py

"""
Code file for housing SynthService. Backs `mvre synth`.
"""

# Default libs
from pathlib import Path

# Dependencies
from rich.table import Table
from rich import box

# Deps from this project
from ..objects.app_context import AppContext
from ..objects.config import Config
from ..objects.synth import SynthConfig, SynthDataset
from ..utilities.functions_utility import render_renderable
from ..utilities.logging_utility import Logger
from .synthbench import describe_numeric, emit_dataset, generate


# Config keys passed to SynthConfig only when given; SynthConfig holds their defaults
_OPTIONAL_KEYS = ("n", "gamma", "sigma", "interaction", "interaction_strength",
    "localities", "locality_feature")


class SynthService:
    """
    Generates a synthetic dataset and writes it as CSV + tile store.
    """

    @staticmethod
    def run(ctx: AppContext, config: Config) -> SynthDataset:
        synth_config = SynthService.synth_config(config)
        ctx.logger.log(Logger.DEBUG, f"Synthetic config: {synth_config.to_dict()}")

        dataset = generate(synth_config)
        paths = emit_dataset(dataset, Path(config.out))
        ctx.logger.log(Logger.INFO, f"Wrote {paths['csv']} and {len(dataset.images)} tiles "
            f"under {paths['tiles']}")

        ctx.output_buffer.write(render_renderable(SynthService._summary_table(dataset)))
        ctx.output_buffer.write("")
        ctx.output_buffer.write(f"{synth_config.n} records, {len(dataset.quadkeys)} tiles "
            f"(level {synth_config.tile_level}, {synth_config.image_size}x{synth_config.image_size} px) "
            f"written to {config.out}")
        return dataset


    @staticmethod
    def synth_config(config: Config) -> SynthConfig:
        given = {key: config.get(key) for key in _OPTIONAL_KEYS if config.get(key) is not None}
        return SynthConfig(seed=int(config.seed), image_size=int(config.image_size),
            tile_level=int(config.tile_level), **given)


    @staticmethod
    def _summary_table(dataset: SynthDataset) -> Table:
        """ Descriptive statistics of the numeric variables and the price """
        stats = describe_numeric(dataset)
        table = Table(title="Descriptive statistics of the numerical variables",
            box=box.SIMPLE_HEAD)
        table.add_column("Variable")
        for column in stats.columns:
            table.add_column(column, justify="right")
        for name, row in stats.iterrows():
            table.add_row(str(name), *(f"{value:,.2f}" for value in row))
        return table
