# mvre/services/copy_service.py

"""
Code file for housing CopyService Class.

Static methods; copies an emitted report document to the clipboard
"""

# Dependencies
import pyperclip

# Deps from this project
from ..objects.app_context import AppContext
from ..objects.config import Config
from ..utilities.logging_utility import Logger


class CopyService:
    """
    Copies the report document produced by `mvre eval --copy`.
    """

    @staticmethod
    def run(ctx: AppContext, config: Config, document: str) -> bool:
        """
        Copy the document to the clipboard. A missing clipboard backend is
        logged as a warning and the run continues.

        Returns:
            bool: True when the document was copied
        """

        try:
            pyperclip.copy(document)
        except Exception as e:
            ctx.logger.log(Logger.WARNING, f"Failed to copy to clipboard: {e}")
            return False

        ctx.logger.log(Logger.INFO, f"Copied the {config.format} report to the clipboard")
        return True
