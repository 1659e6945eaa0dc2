from typing import List, Optional, Union

import pandas as pd


class TraceDerivError(ValueError):
    """Base class for all errors raised by tracederiv"""


class RegexpSyntaxError(TraceDerivError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class UnknownLetterError(TraceDerivError):
    def __init__(self, letter: str, position: Optional[int] = None):
        self.letter = letter
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"Letter {letter!r}{where} is not in the alphabet")


class AlphabetError(TraceDerivError):
    pass


class LengthCapError(TraceDerivError):
    def __init__(self, max_len: int, cap: int):
        self.max_len = max_len
        self.cap = cap
        super().__init__(f"max_len={max_len} exceeds the enumeration cap of {cap}")


class StateListError(TraceDerivError):
    pass


class EngineError(TraceDerivError):
    pass


def has_error(row: pd.Series) -> bool:
    error = row.get("__error__")

    if not error:
        return False
    elif not pd.notna(error):
        return False
    else:
        return True


def rows_with_errors(
    df: pd.DataFrame, aslist: bool = False
) -> Union[pd.Series, List[bool]]:
    if not isinstance(aslist, bool):
        raise ValueError("aslist must be a boolean.")

    if "__error__" not in df:
        result = [False] * len(df)
    else:
        isna = df.__error__.isna()  # None, NaN
        empties = ~df.__error__.astype(bool)  # Empty strings
        result = ~(empties | isna)

    return list(result) if aslist else result
