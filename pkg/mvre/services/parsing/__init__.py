# mvre/services/parsing/__init__.py

"""
Parsing module for mvre CLI argument handling.
"""

from .parsing_service import ParsingService, CustomArgumentParser
from .rich_help_formatter import RichHelpFormatter
from .fixing_service import FixingService

__all__ = [
    'ParsingService',
    'CustomArgumentParser',
    'RichHelpFormatter',
    'FixingService',
]
