# mvre/services/parsing/parsing_service.py

"""
Code file for housing ParsingService class. Handles argument parsing setup.
"""

# Default libs
import argparse
import sys

# Imports from this project
from ...constants.constant import EXIT_USAGE
from ...objects.app_context import AppContext
from ...objects.config import Config
from ...utilities.functions_utility import (positive_int, non_negative_int,
    non_negative_float, open_fraction, level_int)
from .rich_help_formatter import RichHelpFormatter
from .fixing_service import FixingService


class CustomArgumentParser(argparse.ArgumentParser):
    """Custom ArgumentParser with a rich help screen and concise usage errors."""

    def error(self, message):
        """Show only the error message. Usage errors exit with code 1."""
        self.exit(EXIT_USAGE, f"Error: {message}\nUse '{self.prog} --help' for more information.\n")

    def print_help(self, file=None):
        RichHelpFormatter(self.prog).print_parser_help(self)


class ParsingService:
    """
    CLI parsing service for the mvre tool.

    Builds the main parser with one subparser per command, then delegates
    to FixingService for argument correction.
    """

    @staticmethod
    def run(ctx: AppContext, argv: list[str] | None = None) -> Config:
        """
        Public function to parse command-line arguments for the mvre tool.

        Returns:
            Config: Configuration object to be used in-place of args
        """

        ap = ParsingService.build_parser(ctx)
        args = ap.parse_args(sys.argv[1:] if argv is None else argv)
        ctx.logger.log(ctx.logger.DEBUG, f"Parsed arguments: {args}")

        # Correct the arguments (e.g., resolve data directories, model aliases)
        args = FixingService.correct_args(ctx, args)

        config = Config(ctx, args)
        return FixingService.fix_contradicting_args(ctx, config)


    @staticmethod
    def build_parser(ctx: AppContext) -> CustomArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        ParsingService._add_general_options(ctx, common)

        ap = CustomArgumentParser(
            prog="mvre",
            description="Multi-view real-estate regression benchmark.",
            parents=[common],
        )
        ap.add_argument("-v", "--version", action="store_true",
            default=argparse.SUPPRESS,
            help="Display the version number of the tool")
        ap.add_argument("--user-config", action="store_true",
            default=argparse.SUPPRESS, dest="config_user",
            help="Create a default .mvre/config.json in the current directory")

        commands = ap.add_subparsers(dest="command", metavar="COMMAND",
            parser_class=CustomArgumentParser)

        ParsingService._add_synth_command(ctx, commands, common)
        ParsingService._add_tiles_command(ctx, commands, common)
        ParsingService._add_train_command(ctx, commands, common)
        ParsingService._add_eval_command(ctx, commands, common)
        ParsingService._add_coef_command(ctx, commands, common)
        return ap


    @staticmethod
    def _add_general_options(ctx: AppContext, ap: argparse.ArgumentParser):
        general = ap.add_argument_group("GENERAL OPTIONS")

        general.add_argument("--no-config", action="store_true",
            default=argparse.SUPPRESS,
            help="Ignore .mvre/config.json and use default, environment and cli values")

        general.add_argument("--verbose", "--log", action="store_true",
            default=argparse.SUPPRESS,
            help="Print the log after the run. Helpful for debugging.")


    @staticmethod
    def _add_synth_command(ctx: AppContext, commands, common):
        synth = commands.add_parser("synth", parents=[common],
            help="Generate a synthetic dataset with its tile store",
            description="Generate a synthetic dataset with its tile store.")
        group = synth.add_argument_group("synthetic data options")

        group.add_argument("--seed", type=non_negative_int, default=argparse.SUPPRESS,
            help="Seed of the generator")
        group.add_argument("--n", type=positive_int, default=argparse.SUPPRESS,
            help="Number of records")
        group.add_argument("--gamma", type=float, default=argparse.SUPPRESS,
            help="Weight of the hidden image quality in log price")
        group.add_argument("--sigma", type=non_negative_float, default=argparse.SUPPRESS,
            help="Standard deviation of the log-price noise")
        group.add_argument("--interaction", action="store_true", default=argparse.SUPPRESS,
            help="Add the quality x first-attribute interaction term")
        group.add_argument("--interaction-strength", type=float, default=argparse.SUPPRESS,
            dest="interaction_strength", help="Weight of the interaction term")
        group.add_argument("--localities", type=positive_int, default=argparse.SUPPRESS,
            help="Number of locality bands (L0, L1, ...)")
        group.add_argument("--locality-feature", action="store_true", default=argparse.SUPPRESS,
            dest="locality_feature", help="Also expose the locality as a categorical feature")
        group.add_argument("--image-size", type=positive_int, default=argparse.SUPPRESS,
            dest="image_size", help="Side of the square tiles in pixels")
        group.add_argument("--tile-level", type=level_int, default=argparse.SUPPRESS,
            dest="tile_level", help="Zoom level of the tile store")
        group.add_argument("-o", "--out", default=argparse.SUPPRESS,
            help="Directory the dataset is written to")


    @staticmethod
    def _add_tiles_command(ctx: AppContext, commands, common):
        tiles = commands.add_parser("tiles", parents=[common],
            help="Web-mercator tile math: quadkey, resolution, bbox",
            description="Web-mercator tile math.")
        actions = tiles.add_subparsers(dest="tiles_action", metavar="ACTION",
            parser_class=CustomArgumentParser, required=True)

        for name, text in (
            ("quadkey", "Tile coordinate, quadkey and footprint of a point"),
            ("resolution", "Ground resolution in meters per pixel"),
            ("bbox", "Lat/lon bounding box of the tile containing a point"),
        ):
            action = actions.add_parser(name, parents=[common], help=text, description=text + ".")
            group = action.add_argument_group("tile options")
            group.add_argument("--lat", type=float, required=True, help="Latitude in degrees")
            if name != "resolution":
                group.add_argument("--lon", type=float, required=True, help="Longitude in degrees")
            group.add_argument("--level", type=level_int, default=argparse.SUPPRESS,
                dest="tile_level", help="Zoom level (1-23)")


    @staticmethod
    def _add_data_flags(group: argparse._ArgumentGroup):
        group.add_argument("--data", default=argparse.SUPPRESS,
            help="Dataset CSV, or a directory holding houses.csv and schema.json")
        group.add_argument("--schema", default=argparse.SUPPRESS,
            help="Schema JSON (defaults to schema.json next to the CSV)")
        group.add_argument("--tiles", default=argparse.SUPPRESS,
            help="Tile store directory (<dir>/<level>/<quadkey>.png)")
        group.add_argument("--tile-endpoint", default=argparse.SUPPRESS, dest="tile_endpoint",
            help="Remote tile URL template with a {quadkey} placeholder")
        group.add_argument("--tile-cache", default=argparse.SUPPRESS, dest="tile_cache",
            help="Disk cache directory of remote tiles")
        group.add_argument("--geocode", default=argparse.SUPPRESS,
            help="CSV lookup table (address,lat,lon) for records without coordinates")
        group.add_argument("--split", default=argparse.SUPPRESS,
            help="'random' or 'geo:<locality>[,<locality>...]'")
        group.add_argument("--train-fraction", type=open_fraction, default=argparse.SUPPRESS,
            dest="train_fraction", help="Training share of each random split")
        group.add_argument("--tile-level", type=level_int, default=argparse.SUPPRESS,
            dest="tile_level", help="Zoom level of the tiles")
        group.add_argument("--fetch-workers", type=positive_int, default=argparse.SUPPRESS,
            dest="fetch_workers", help="Concurrent tile requests")
        group.add_argument("--retries", type=int, default=argparse.SUPPRESS,
            help="Retries of a failing tile request")
        group.add_argument("--backoff", type=non_negative_float, default=argparse.SUPPRESS,
            help="Base delay in seconds between retries, doubled per attempt")


    @staticmethod
    def _add_train_command(ctx: AppContext, commands, common):
        train = commands.add_parser("train", parents=[common],
            help="Train one or all strategies and store the artifacts",
            description="Train one or all strategies and store the artifacts.")

        group = train.add_argument_group("training options")
        group.add_argument("-m", "--model", default=argparse.SUPPRESS,
            help="baseline, m1, m2, m3, m4, m5 or all")
        group.add_argument("--seed", "--seeds", type=non_negative_int, nargs="+",
            default=argparse.SUPPRESS,
            dest="seeds", help="One or more seeds; every strategy is trained once per seed")
        group.add_argument("--epochs", type=positive_int, default=argparse.SUPPRESS,
            help="Maximum number of epochs")
        group.add_argument("--patience", type=positive_int, default=argparse.SUPPRESS,
            help="Stop after this many epochs without validation improvement")
        group.add_argument("--lr", type=float, default=argparse.SUPPRESS,
            help="Adam learning rate")
        group.add_argument("--batch", type=positive_int, default=argparse.SUPPRESS,
            help="Minibatch size")
        group.add_argument("--penultimate", type=positive_int, default=argparse.SUPPRESS,
            help="Width of the CNN's penultimate dense layer")
        group.add_argument("--branch-width", type=positive_int, default=argparse.SUPPRESS,
            dest="branch_width", help="Width of the black-box network's dense layers")
        group.add_argument("--image-size", type=positive_int, default=argparse.SUPPRESS,
            dest="image_size", help="Side of the square input images in pixels")
        group.add_argument("--n-trees", type=positive_int, default=argparse.SUPPRESS,
            dest="n_trees", help="Trees of the random forest")
        group.add_argument("--max-depth", type=positive_int, default=argparse.SUPPRESS,
            dest="max_depth", help="Maximum tree depth")
        group.add_argument("--min-leaf", type=positive_int, default=argparse.SUPPRESS,
            dest="min_leaf", help="Minimum rows per leaf")
        group.add_argument("--max-features", type=positive_int, default=argparse.SUPPRESS,
            dest="max_features", help="Features tried per split (default ceil(d/3))")
        group.add_argument("--no-image-branch", action="store_true", default=argparse.SUPPRESS,
            dest="no_image_branch", help="Train the hybrid network with its image branch pinned at 0")
        group.add_argument("-j", "--jobs", type=positive_int, default=argparse.SUPPRESS,
            help="Worker processes for --model all")
        group.add_argument("-o", "--out", default=argparse.SUPPRESS,
            help="Output root; artifacts go to <out>/artifacts/")

        ParsingService._add_data_flags(train.add_argument_group("data options"))


    @staticmethod
    def _add_eval_command(ctx: AppContext, commands, common):
        evaluate = commands.add_parser("eval", parents=[common],
            help="Evaluate stored artifacts on their test partition",
            description="Evaluate stored artifacts on their test partition.")

        group = evaluate.add_argument_group("evaluation options")
        group.add_argument("--artifacts", default=argparse.SUPPRESS,
            help="Artifact directory, or a root holding several (defaults to <out>)")
        group.add_argument("--format", "--fmt", choices=["csv", "md", "json"],
            default=argparse.SUPPRESS, help="Report format")
        group.add_argument("--reference", action="store_true", default=argparse.SUPPRESS,
            help="Append the full-scale reference results to markdown and json reports")
        group.add_argument("-c", "--copy", action="store_true", default=argparse.SUPPRESS,
            help="Copy the report document to the clipboard")
        group.add_argument("-o", "--out", default=argparse.SUPPRESS,
            help="Output root; reports go to <out>/reports/")

        ParsingService._add_data_flags(evaluate.add_argument_group("data options"))


    @staticmethod
    def _add_coef_command(ctx: AppContext, commands, common):
        coef = commands.add_parser("coef", parents=[common],
            help="Print the coefficient report of an interpretable artifact",
            description="Print the coefficient report of an interpretable artifact.")
        group = coef.add_argument_group("coefficient options")
        group.add_argument("--artifact", required=True,
            help="Artifact directory (holding manifest.json)")
