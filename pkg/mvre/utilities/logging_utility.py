# mvre/utilities/logging_utility.py

"""
Code file for housing Logger and OutputBuffer classes.
"""

# Default libs
import threading

# Dependencies
from rich.console import Console
from rich.text import Text


class Logger:
    """
    Logger class for storing and flushing debug information.

    Collect messages in memory via log() and print them all at once
    using the flush() method. Safe to call from worker threads.
    """

    # Constant log levels
    DEBUG = 10
    INFO = 20
    WARNING = 30
    ERROR = 40

    _LEVEL_STYLES: dict[int, tuple[str, str]] = {
        10: ("DEBUG", "blue"),
        20: ("INFO", "green"),
        30: ("WARNING", "yellow"),
        40: ("ERROR", "red"),
    }


    def __init__(self, console: Console | None = None):
        """
        Initialize the logger with an empty buffer.
        """

        self._messages: list[tuple[int | None, str]] = []
        self._lock = threading.Lock()
        self._console = console or Console(highlight=False, soft_wrap=True)


    def log(self, level: int | None, message: str) -> None:
        """
        Store a message.

        Args:
            level: One of the level constants, or None for an unlabeled line
            message: The message to store
        """

        with self._lock:
            self._messages.append((level, message))


    def flush(self) -> None:
        """
        Print all stored messages to the terminal and clear the buffer.
        """

        if self.empty():
            self._console.print("No log messages to display.")
            return

        for level, message in self.get_records():
            self._console.print(self._render(level, message))
        self.clear()


    def clear(self) -> None:
        """
        Clear all stored messages without printing them.
        """

        with self._lock:
            self._messages.clear()


    def empty(self) -> bool:
        """
        Check if the logger is empty. Uses the __len__ function.
        """

        return len(self) == 0


    def get_records(self) -> list[tuple[int | None, str]]:
        """ Copy of the stored (level, message) pairs """

        with self._lock:
            return self._messages.copy()


    def get_logs(self) -> list[str]:
        """
        Get a copy of the stored messages with their level labels.

        Returns:
            list[str]: a list of the stored messages
        """

        return [self._render(level, msg).plain for level, msg in self.get_records()]


    def __len__(self) -> int:
        with self._lock:
            return len(self._messages)


    def _render(self, level: int | None, message: str) -> Text:
        """
        Prefix the message with its colored level label.
        """

        if level is None:
            return Text(message)

        label, style = self._LEVEL_STYLES.get(level, (str(level), ""))
        text = Text(f"[{label}]", style=style)
        text.append(f" {message}")
        return text


class OutputBuffer(Logger):
    """
    Buffer for the user-facing output of a command. A wrapper around Logger.
    """

    def write(self, message: str) -> None:
        """
        Write a message to the output storage.

        Args:
            message: The message to write
        """
        super().log(level=None, message=message)


    def get_value(self) -> str:
        """
        Get the entire contents of the output buffer as one string.
        """
        return "\n".join(msg for _, msg in self.get_records())


    def flush(self) -> None:
        """
        Print the buffer to stdout verbatim. Nothing is printed when empty.
        """

        if self.empty():
            return

        for _, message in self.get_records():
            print(message)
        self.clear()
