from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import pandas as pd

from tracederiv.base import Link
from tracederiv.io_utilities import df_process_to_csv


def _default_read_options() -> Dict[str, Any]:
    # Expressions such as "1" and the empty word "" must survive as text
    return {"sep": ",", "dtype": str, "keep_default_na": False}


@dataclass
class FromFile(Link):
    """Reads a table of expressions, words and alphabets from a CSV file"""

    filename: str
    pd_readcsv_options: Dict[str, Any] = field(default_factory=_default_read_options)

    def apply(self, df: Optional[pd.DataFrame] = None) -> pd.DataFrame:
        return super().apply(pd.DataFrame() if df is None else df)

    def __call__(self, df: Optional[pd.DataFrame] = None) -> pd.DataFrame:
        return self.apply(df)

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        if not df.empty:
            self.logger.warning(
                f"FromFile received {len(df)} rows, they are replaced by the content of {self.filename}"
            )
        df = pd.read_csv(self.filename, **self.pd_readcsv_options)
        self.logger.info(f"Loaded {len(df)} rows from {self.filename}")
        return df


@dataclass
class ToFile(Link):
    """Writes the dataframe to a CSV file and passes it on"""

    filename: str
    pd_tocsv_options: Dict[str, Any] = field(
        default_factory=lambda: {"sep": ",", "index": False}
    )

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        df_process_to_csv(df, self.filename, **self.pd_tocsv_options)
        self.logger.info(f"Saved {len(df)} rows with basename {self.filename}")
        return df
