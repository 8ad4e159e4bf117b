# mvre/services/parsing/rich_help_formatter.py

"""
Rich-based help formatter for argparse.
Renders the help of the main parser and of every subcommand as panels.
"""

# Default libs
import argparse

# Dependencies
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text
from rich import box


# Border color per argument group, cycled in group order
_GROUP_STYLES = ("green", "cyan", "magenta", "yellow", "red", "blue")


class RichHelpFormatter(argparse.HelpFormatter):
    """
    Custom argparse formatter that prints colored panels instead of plain text.
    The panels are built from the parser's own argument groups, so every
    subcommand gets an accurate help screen.
    """

    def __init__(self, prog, console: Console | None = None):
        super().__init__(prog, max_help_position=40, width=100)
        self.console = console or Console()


    def print_parser_help(self, parser: argparse.ArgumentParser) -> None:
        """ Print the full help screen of `parser` """
        self.console.print()
        self._print_header(parser)
        self._print_usage(parser)

        commands = self._subcommands(parser)
        if commands:
            self._print_commands(commands)

        styles = iter(_GROUP_STYLES * 4)
        for group in parser._action_groups:
            rows = self._rows(group)
            if rows:
                self._print_group(group.title or "Options", rows, next(styles))


    def _print_header(self, parser: argparse.ArgumentParser) -> None:
        header = Text()
        header.append(parser.prog, style="bold blue")
        if parser.description:
            header.append("  ")
            header.append(parser.description, style="cyan italic")
        self.console.print(header)


    def _print_usage(self, parser: argparse.ArgumentParser) -> None:
        usage_text = Text()
        usage_text.append(f"{parser.prog} ", style="bold yellow")
        if self._subcommands(parser):
            usage_text.append("[GENERAL OPTIONS] ", style="green")
            usage_text.append("COMMAND ", style="cyan")
            usage_text.append("[OPTIONS]", style="green")
        else:
            usage_text.append("[OPTIONS]", style="green")

        self.console.print(Panel(
            usage_text,
            title="[bold white]Usage[/bold white]",
            title_align="left",
            box=box.ROUNDED,
            border_style="yellow",
            padding=(0, 2)
        ))


    def _print_commands(self, commands: list[tuple[str, str]]) -> None:
        table = Table(show_header=False, box=box.SIMPLE, padding=(0, 2), collapse_padding=True)
        table.add_column("Command", style="bold cyan", width=20)
        table.add_column("Description", style="white")
        for name, description in commands:
            table.add_row(name, description)

        self.console.print(Panel(
            table,
            title="[bold white]Commands[/bold white]",
            title_align="left",
            box=box.ROUNDED,
            border_style="cyan",
            padding=(0, 1)
        ))


    def _print_group(self, title: str, rows: list[tuple[str, str]], style: str) -> None:
        table = Table(show_header=False, box=box.SIMPLE, padding=(0, 1), collapse_padding=True)
        table.add_column("Flag", style=f"bold {style}", width=32)
        table.add_column("Description", style="white")
        for flag, description in rows:
            table.add_row(flag, description)

        self.console.print(Panel(
            table,
            title=f"[bold white]{title.title()}[/bold white]",
            title_align="left",
            box=box.ROUNDED,
            border_style=style,
            padding=(0, 1)
        ))


    @staticmethod
    def _subcommands(parser: argparse.ArgumentParser) -> list[tuple[str, str]]:
        for action in parser._actions:
            if isinstance(action, argparse._SubParsersAction):
                return [(choice.dest, choice.help or "") for choice in action._choices_actions]
        return []


    @staticmethod
    def _rows(group: argparse._ArgumentGroup) -> list[tuple[str, str]]:
        rows = []
        for action in group._group_actions:
            if isinstance(action, argparse._SubParsersAction) or action.help == argparse.SUPPRESS:
                continue
            if action.option_strings:
                flag = ", ".join(action.option_strings)
                if action.nargs != 0:
                    flag += f" {action.metavar or action.dest.upper()}"
            else:
                flag = action.metavar or action.dest.upper()
            help_text = action.help or ""
            if action.choices and not isinstance(action.choices, dict):
                help_text += f" ({'|'.join(str(c) for c in action.choices)})"
            rows.append((flag, help_text))
        return rows
