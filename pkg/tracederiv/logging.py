import inspect
import logging
from functools import partialmethod

import pandas as pd

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s: %(message)s"

logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT)

logger = logging.getLogger("tracederiv.logging")


def set_global_level(level_str: str) -> int:
    """Set the root log level from a name such as 'debug' and return the numeric level"""
    level = logging.getLevelName(level_str.upper())
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level {level_str!r}")
    logging.getLogger().setLevel(level)
    return level


class RowLogger:
    """Logger for the pandas.Series named 'row' in the call stack, or supplied as argument.

    Messages at or above the parent's effective level are appended as
    'LEVEL: message' lines to the row's '__log__' column."""

    log_column = "__log__"

    def __init__(self, parent):
        self.parent = parent

    def log(self, level: str, message: str, row: pd.Series = None) -> pd.Series:
        if row is None:
            row = self._get_outer_row()
        if logging.getLevelName(level) < self.parent.logger.getEffectiveLevel():
            return row
        return self.parent._create_or_append(
            row, f"{level}: {message}", column_name=self.log_column
        )

    def _level_method(self, message: str, row: pd.Series = None, *, level: str):
        return self.log(level, message, row=row)

    debug = partialmethod(_level_method, level="DEBUG")
    info = partialmethod(_level_method, level="INFO")
    warning = partialmethod(_level_method, level="WARNING")
    error = partialmethod(_level_method, level="ERROR")
    critical = partialmethod(_level_method, level="CRITICAL")

    @staticmethod
    def _get_outer_row() -> pd.Series:
        frame = inspect.currentframe().f_back
        while frame is not None:
            row = frame.f_locals.get("row", None)
            if row is not None:
                return row
            frame = frame.f_back
        raise ValueError("Row not found in the call stack")
