# mvre/services/general_options_service.py

"""
Code file for housing GeneralOptionsService.
"""

# Default libs
import sys

# Deps from this project
from ..objects.app_context import AppContext
from ..objects.config import Config
from mvre import __version__


class GeneralOptionsService:
    """
    Service to handle all General options.
    """

    @staticmethod
    def run(ctx: AppContext, config: Config) -> None:
        """
        Handle --user-config and --version. Both exit after printing.

        Args:
            config (Config): config object created in main
        """

        if config.get("config_user"):
            path = Config.create_default_config(ctx)
            print(f"Default config written to {path}")
            sys.exit(0)
        elif config.get("version"):
            print(__version__)
            sys.exit(0)
