# mvre/main.py

"""
Code file for housing the main function.
"""

# Default libs
import sys, time
if sys.platform.startswith('win'):      # fix windows unicode error on CI
    sys.stdout.reconfigure(encoding='utf-8')

# Deps from this project
from .constants.constant import EXIT_USAGE
from .objects.app_context import AppContext
from .objects.errors import MvreError
from .services.parsing import ParsingService
from .services.general_options_service import GeneralOptionsService
from .services.synth_service import SynthService
from .services.tiles_service import TilesService
from .services.train_service import TrainService
from .services.eval_service import EvalService
from .services.coef_service import CoefService
from .services.flush_service import FlushService
from .utilities.functions_utility import error_and_exit
from .utilities.logging_utility import Logger


# Subcommand -> service
COMMANDS = {
    "synth": SynthService,
    "tiles": TilesService,
    "train": TrainService,
    "eval": EvalService,
    "coef": CoefService,
}


def main(argv: list[str] | None = None) -> None:
    """
    Main entry point for the mvre CLI tool.

    Handles the main workflow of the app.
    """

    # Record time for performance noting
    start_time = time.time()


    # Initialize app context
    ctx = AppContext()
    config = None

    try:
        # Prepare the config object (this has all the args now)
        config = ParsingService.run(ctx, argv)


        # Handles --version and --user-config
        GeneralOptionsService.run(ctx, config)


        command = config.get("command")
        if not command:
            error_and_exit("No command given. Use 'mvre --help' for more information.", EXIT_USAGE)

        COMMANDS[command].run(ctx, config)

    except MvreError as e:
        ctx.logger.log(Logger.ERROR, f"{type(e).__name__}: {e}")
        FlushService.run(ctx, config)
        error_and_exit(str(e), e.exit_code)


    # Log performance (time)
    ctx.logger.log(Logger.INFO,
        f"Total time for this run: {round((time.time()-start_time)*1000, 2)} ms")


    # Flush the buffers to the console before exiting
    FlushService.run(ctx, config)


if __name__ == "__main__":
    main()
