# mvre/services/parsing/fixing_service.py

"""
Service for correcting and fixing CLI arguments.
Resolves dataset paths, model aliases and split strings.
"""

# Default libs
import argparse
from pathlib import Path

# Imports from this project
from ...constants.constant import SYNTH_CSV, SYNTH_SCHEMA
from ...objects.app_context import AppContext
from ...objects.config import Config
from ...objects.strategy import StrategyId
from ..tabular import parse_split


class FixingService:
    """
    Service responsible for correcting and validating parsed arguments.
    """

    @staticmethod
    def correct_args(ctx: AppContext, args: argparse.Namespace) -> argparse.Namespace:
        """
        Correct and validate CLI arguments in place.

        Raises:
            ValidationError: unknown model name or malformed split
        """

        # Model aliases (m1..m5) become catalog names
        model = getattr(args, "model", None)
        if model is not None and model != "all":
            args.model = StrategyId.parse(model).value

        # A dataset directory stands for its houses.csv and schema.json
        if getattr(args, "data", None) is not None:
            args.data, schema = FixingService._fix_data_path(args.data)
            if getattr(args, "schema", None) is None:
                args.schema = schema

        if getattr(args, "split", None) is not None:
            parse_split(args.split)

        ctx.logger.log(ctx.logger.DEBUG, f"Corrected arguments: {args}")
        return args


    @staticmethod
    def _fix_data_path(data: str) -> tuple[str, str]:
        """
        Returns (csv path, default schema path) for a CSV file or a dataset
        directory.
        """
        path = Path(data)
        if path.is_dir():
            return str(path / SYNTH_CSV), str(path / SYNTH_SCHEMA)
        return str(path), str(path.parent / SYNTH_SCHEMA)


    @staticmethod
    def fix_contradicting_args(ctx: AppContext, config: Config) -> Config:
        """
        Prevents unexpected behaviour of the tool if contradictory options are used.
        """

        if config.get("no_image_branch") and config.get("model") not in (None, "all",
                StrategyId.M4_HYBRID.value):
            ctx.logger.log(ctx.logger.WARNING,
                "--no-image-branch only applies to the hybrid network (m4) and is ignored")

        if config.get("tiles") and config.get("tile_endpoint"):
            ctx.logger.log(ctx.logger.WARNING,
                "Both --tiles and a tile endpoint are set. The local tile store is used")

        return config
