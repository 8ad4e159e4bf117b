# mvre/utilities/functions_utility.py

"""
Utility functions for the tool.
"""

# Default libs
import argparse
import io
import sys
from typing import NoReturn

# Dependencies
from rich.console import Console

# Deps from this project
from ..constants.constant import MIN_LEVEL, MAX_LEVEL


def positive_int(v: str) -> int:
    """
    Validate and convert an argument that must be an integer >= 1.

    Raises:
        argparse.ArgumentTypeError: If value is not a positive integer
    """
    try:
        n = int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{v}'")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def non_negative_int(v: str) -> int:
    """ Integer >= 0, used for seeds """
    try:
        n = int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{v}'")
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def non_negative_float(v: str) -> float:
    """
    Validate and convert an argument that must be a finite float >= 0.
    Used for --sigma and --gamma style flags.
    """
    try:
        x = float(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got '{v}'")
    if not x >= 0 or x == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a finite number >= 0, got {v}")
    return x


def open_fraction(v: str) -> float:
    """ Float strictly between 0 and 1 """
    x = float(v)
    if not 0.0 < x < 1.0:
        raise argparse.ArgumentTypeError(f"must lie in (0, 1), got {v}")
    return x


def render_renderable(renderable, width: int = 120) -> str:
    """
    Render a rich renderable (Table, Panel...) to plain text so it can be
    stored in an OutputBuffer. No color codes are emitted, which keeps the
    output byte-identical between runs and terminals.
    """
    buf = io.StringIO()
    console = Console(file=buf, width=width, color_system=None,
        force_terminal=False, highlight=False)
    console.print(renderable)
    return buf.getvalue().rstrip("\n")


def error_and_exit(message: str, code: int = 1) -> NoReturn:
    """
    Print an error message and exit the program with the given error code.

    Args:
        message (str): Error message to display
        code (int): Exit code (default: 1)

    Returns:
        NoReturn
    """
    print(f"Error: {message}", file=sys.stderr)
    sys.exit(code)


def level_int(v: str) -> int:
    """ Zoom level between 1 and 23 """
    try:
        level = int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer level, got '{v}'")
    if not MIN_LEVEL <= level <= MAX_LEVEL:
        raise argparse.ArgumentTypeError(f"level must lie in [{MIN_LEVEL}, {MAX_LEVEL}], got {level}")
    return level
