from dataclasses import dataclass

import pandas as pd

from tracederiv.analysis import check_rank, check_uniform_rank, language_connected, star_connected
from tracederiv.base import RowLink
from tracederiv.engines import resolve_inputs
from tracederiv.links.engines import _cell_text
from tracederiv.syntax import render_word
from tracederiv.typing import InColumnName, OutColumnName


@dataclass
class _ExpressionRowLink(RowLink):
    expr_column: InColumnName = "expr"
    alphabet_column: str = "alphabet"

    def _row_inputs(self, row: pd.Series):
        alphabet = _cell_text(row.get(self.alphabet_column)) or None
        e, _, alphabet = resolve_inputs(_cell_text(row[self.expr_column]), (), alphabet)
        return e, alphabet


@dataclass
class StarConnected(_ExpressionRowLink):
    """Writes whether every starred subexpression has a connected language"""

    out_column: OutColumnName = "star_connected"

    def _row_apply(self, row: pd.Series) -> pd.Series:
        row[self.out_column] = star_connected(*self._row_inputs(row))
        return row


@dataclass
class LanguageConnected(_ExpressionRowLink):
    """Writes whether every word of the language uses a connected set of letters"""

    out_column: OutColumnName = "connected"

    def _row_apply(self, row: pd.Series) -> pd.Series:
        row[self.out_column] = language_connected(*self._row_inputs(row))
        return row


@dataclass
class RankCheck(_ExpressionRowLink):
    """Bounded check of the (uniform) scattering rank claim for each expression

    Writes the outcome and, when refuted, the counterexample word."""

    bound: int = 1
    max_len: int = 6
    uniform: bool = False
    out_column: OutColumnName = "rank_outcome"
    counterexample_column: OutColumnName = "rank_counterexample"

    def _row_apply(self, row: pd.Series) -> pd.Series:
        e, alphabet = self._row_inputs(row)
        check = check_uniform_rank if self.uniform else check_rank
        verdict = check(e, alphabet, self.bound, self.max_len)
        row[self.out_column] = verdict.outcome.value
        row[self.counterexample_column] = (
            None if verdict.word is None else render_word(verdict.word)
        )
        if not verdict.holds:
            self.row_logger.info(
                f"Bound {self.bound} refuted at {render_word(verdict.word)}"
            )
        return row
