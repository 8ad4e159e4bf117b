# mvre/objects/errors.py

"""
Code file for housing the exception hierarchy of the tool.

Every error carries the exit code the CLI terminates with when it
reaches main() uncaught.
"""

# Deps from this project
from ..constants.constant import EXIT_USAGE, EXIT_NOT_INTERPRETABLE, EXIT_DATA


class MvreError(Exception):
    """ Root of all errors raised by mvre """
    exit_code = EXIT_USAGE


class ValidationError(MvreError):
    """ Invalid argument, config value or precondition """


class ShapeError(ValidationError):
    """ Tensor or port shape mismatch """


class NonFiniteError(ValidationError):
    """ NaN or Inf found where finite values are required """


class StaleCacheError(ValidationError):
    """ Backward called with a cache from another network or parameter state """


class DivergenceError(MvreError):
    """ Training loss became non-finite """


class RankDeficiencyError(ValidationError):
    """
    Design matrix is not of full column rank.

    Attributes:
        columns: names (or indices) of the redundant columns
    """

    def __init__(self, message: str, columns: list[str]):
        super().__init__(f"{message}: {', '.join(columns)}")
        self.columns = columns


class SplitError(ValidationError):
    """ A split produced an empty partition """


class LevelError(ValidationError):
    """ Zoom level outside the supported range """


class NotInterpretableError(MvreError):
    """ Coefficients were requested from a black-box strategy """
    exit_code = EXIT_NOT_INTERPRETABLE


class ReportFormatError(ValidationError):
    """ Unknown report format """


class DataError(MvreError):
    """ Root of errors caused by input data or stored files """
    exit_code = EXIT_DATA


class SchemaError(DataError):
    """ Records do not match the dataset schema """


class MissingTileError(DataError):
    """ Tile does not exist at the source (not retried) """


class MalformedTileError(DataError):
    """ Tile bytes could not be decoded as an image """


class RetryExhaustedError(DataError):
    """ Transient tile failures outlasted the retry budget """


class MissingImagesError(DataError):
    """ An image-dependent strategy was given records without images """


class UntrainedError(DataError):
    """ A model component was used before being trained """


class ArtifactMismatchError(DataError):
    """ A stored artifact does not match the data or split it is used with """
