from dataclasses import dataclass

import pandas as pd

from tracederiv.base import Link
from tracederiv.errormanager import rows_with_errors
from tracederiv.io_utilities import df_process_to_csv


@dataclass
class StripErrors(Link):
    """Removes rows that carry an error, e.g. unparsable expressions or exceeded caps

    The removed rows are kept in the .error_df attribute and optionally saved to filename."""

    filename: str = None

    def __post_init__(self):
        super().__post_init__()
        self.error_df = pd.DataFrame()

    @property
    def has_errors(self) -> bool:
        return not self.error_df.empty

    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        if "__error__" not in df:
            self.logger.debug("No error column, nothing to strip")
            self.error_df = pd.DataFrame()
            return df

        error_mask = rows_with_errors(df)
        self.error_df = df[error_mask]
        clean_df = df[~error_mask].drop(columns=["__error__"])
        self.logger.info(
            f"Stripped {len(self.error_df)} of {len(df)} rows with errors, see .error_df"
        )
        if self.filename and self.has_errors:
            self.logger.info(f"Saving rows with errors in {self.filename}")
            df_process_to_csv(self.error_df, self.filename, index=False)
        return clean_df
