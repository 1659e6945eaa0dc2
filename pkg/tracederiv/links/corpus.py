from dataclasses import dataclass, field
from typing import List, Optional

import pandas as pd

from tracederiv.base import Link
from tracederiv.corpus import regexp_corpus, words_up_to
from tracederiv.syntax import parse_alphabet, render_regexp, render_word
from tracederiv.typing import InColumnName, OutColumnName


@dataclass
class RandomRegexps(Link):
    """Creates a table of seeded random regexps with random independence alphabets

    The incoming dataframe is replaced, so this link starts a sweep chain."""

    count: int = 50
    max_size: int = 8
    letters: List[str] = field(default_factory=lambda: ["a", "b", "c"])
    seed: int = 0
    expr_column: OutColumnName = "expr"
    alphabet_column: OutColumnName = "alphabet"

    def apply(self, df: Optional[pd.DataFrame] = None) -> pd.DataFrame:
        return super().apply(pd.DataFrame() if df is None else df)

    def __call__(self, df: Optional[pd.DataFrame] = None) -> pd.DataFrame:
        return self.apply(df)

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        if not df.empty:
            self.logger.warning(f"RandomRegexps replaces the {len(df)} incoming rows")
        corpus = regexp_corpus(self.count, self.max_size, self.letters, self.seed)
        self.logger.info(f"Generated {len(corpus)} regexps with seed {self.seed}")
        return pd.DataFrame(
            {
                self.expr_column: [render_regexp(e) for e, _ in corpus],
                # single-line form, so the table survives CSV round trips
                self.alphabet_column: [
                    alphabet.render().replace("\n", "; ") for _, alphabet in corpus
                ],
            }
        )


@dataclass
class WordGrid(Link):
    """Repeats each row once per word over its alphabet, up to max_len letters"""

    max_len: int = 4
    alphabet_column: InColumnName = "alphabet"
    word_column: OutColumnName = "word"

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        df = df.copy()
        df[self.word_column] = [
            [
                render_word(word, empty="")
                for word in words_up_to(parse_alphabet(text).sigma, self.max_len)
            ]
            for text in df[self.alphabet_column]
        ]
        grid = df.explode(self.word_column, ignore_index=True)
        self.logger.debug(f"Expanded {len(df)} rows into {len(grid)} row-word pairs")
        return grid
