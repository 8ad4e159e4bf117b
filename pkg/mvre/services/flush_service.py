# mvre/services/flush_service.py

"""
Code file for housing FlushService.
"""

# Deps from this project
from ..objects.app_context import AppContext
from ..objects.config import Config


class FlushService:
    """
    This class contains methods to help flush the output buffers
    in AppContext based on configuration.
    """

    @staticmethod
    def run(ctx: AppContext, config: Config | None) -> None:
        """
        Flush the output buffer, then the log when in verbose mode.

        Args:
            ctx (AppContext): The application context
            config (Config): The application configuration, None when
                parsing failed before one was built
        """

        ctx.output_buffer.flush()

        if config is not None and config.verbose:
            print()
            print("LOG:")
            ctx.logger.flush()
