from dataclasses import dataclass, field
from typing import List

import pandas as pd

from tracederiv.base import Link


def _missing(df: pd.DataFrame, columns: List[str]) -> List[str]:
    return [column for column in columns if column not in df.columns]


@dataclass
class NullLink(Link):
    """Passes the dataframe on unchanged

    Parameters
    ----------
    name : str
        Label shown in the logs
    """

    name: str = "NullLink"

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        self.logger.debug(f"Applying link {self.name}")
        return df


@dataclass
class Query(Link):
    """Keeps the rows matching a pandas query, e.g. 'not agree' after an Agreement link"""

    query: str = ""

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        if not self.query:
            self.logger.warning("No query given, the dataframe is passed on unchanged")
            return df
        selected = df.query(self.query)
        self.logger.debug(f"Query kept {len(selected)} of {len(df)} rows")
        return selected


@dataclass
class KeepColumns(Link):
    """Keeps only the named columns, in the given order"""

    columns: List[str] = field(default_factory=list)

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        missing = _missing(df, self.columns)
        if missing:
            raise KeyError(f"Cannot keep missing columns {missing}")
        dropped = set(df.columns).difference(self.columns)
        self.logger.debug(f"Keeping {self.columns}, dropping {sorted(dropped)}")
        return df.loc[:, self.columns]


@dataclass
class DropColumns(Link):
    """Drops the named columns, ignoring names that are not present"""

    columns: List[str] = field(default_factory=list)

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        missing = _missing(df, self.columns)
        if missing:
            self.logger.debug(f"Columns {missing} are not present")
        return df.drop(columns=[c for c in self.columns if c not in missing])


@dataclass
class DropDuplicates(Link):
    """Drops repeated rows, compared on the listed columns"""

    columns: List[str] = field(default_factory=list)

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        if not self.columns:
            self.logger.warning("No columns given, the dataframe is passed on unchanged")
            return df
        deduplicated = df.drop_duplicates(subset=self.columns)
        self.logger.debug(
            f"Dropped {len(df) - len(deduplicated)} duplicates, {len(deduplicated)} rows remain"
        )
        return deduplicated
