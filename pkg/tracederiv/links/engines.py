from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

import pandas as pd

from tracederiv.base import Link, RowLink
from tracederiv.engines import (
    DEFAULT_ORACLE_LENGTH,
    check_engine,
    derive,
    membership,
    resolve_inputs,
)
from tracederiv.normalizer import TheoryTier
from tracederiv.syntax import IndependenceAlphabet, Regexp
from tracederiv.typing import InColumnName, OutColumnName, Word


def _cell_text(value: Any) -> str:
    if value is None or (not isinstance(value, str) and pd.isna(value)):
        return ""
    return str(value)


@dataclass
class _EngineRowLink(RowLink):
    """Shared row parsing for links that run an engine on an expression and a word"""

    engine: str = "brzozowski-reorder"
    bound: Optional[int] = None
    normalize: Optional[str] = "t0"
    expr_column: InColumnName = "expr"
    word_column: InColumnName = "word"
    alphabet_column: str = "alphabet"

    def __post_init__(self):
        super().__post_init__()
        check_engine(self.engine, self.bound)
        TheoryTier.parse(self.normalize)

    def _row_inputs(self, row: pd.Series) -> Tuple[Regexp, Word, IndependenceAlphabet]:
        alphabet = _cell_text(row.get(self.alphabet_column)) or None
        e, words, alphabet = resolve_inputs(
            _cell_text(row[self.expr_column]),
            [_cell_text(row[self.word_column])],
            alphabet,
        )
        return e, words[0], alphabet


@dataclass
class Derive(_EngineRowLink):
    """Writes the rendered derivative (or parts, or state lists) of expr along word"""

    max_len: int = DEFAULT_ORACLE_LENGTH
    out_column: OutColumnName = "derivative"

    def _row_apply(self, row: pd.Series) -> pd.Series:
        e, w, alphabet = self._row_inputs(row)
        result = derive(
            self.engine, e, w, alphabet, self.bound, self.normalize, self.max_len
        )
        row[self.out_column] = result.render()
        return row


@dataclass
class Membership(_EngineRowLink):
    """Writes whether word is accepted by the engine, into out_column (default 'member_<engine>')"""

    out_column: Optional[OutColumnName] = None

    @property
    def target_column(self) -> str:
        return self.out_column or f"member_{self.engine}"

    def _row_apply(self, row: pd.Series) -> pd.Series:
        e, w, alphabet = self._row_inputs(row)
        row[self.target_column] = membership(
            self.engine, e, w, alphabet, self.bound, self.normalize
        )
        return row


@dataclass
class Agreement(Link):
    """Marks the rows where all listed verdict columns hold the same value"""

    columns: List[str] = field(default_factory=list)
    out_column: OutColumnName = "agree"

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        missing = [column for column in self.columns if column not in df.columns]
        if missing:
            raise KeyError(f"Missing verdict columns {missing}")
        df = df.copy()
        if df.empty:
            df[self.out_column] = pd.Series(dtype=bool)
            return df
        verdicts = df[self.columns].astype(str)
        df[self.out_column] = verdicts.nunique(axis=1) <= 1
        disagreements = int((~df[self.out_column]).sum())
        if disagreements:
            self.logger.warning(f"{disagreements} rows disagree on {self.columns}")
        return df
