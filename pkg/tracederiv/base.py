from __future__ import annotations

import copy
import importlib.metadata
import inspect
import traceback
from abc import ABC, abstractmethod
from dataclasses import dataclass, fields
from pydoc import locate
from typing import Any, List, Tuple, Union

import pandas as pd

from tracederiv.errormanager import has_error
from tracederiv.io_utilities import load_chain, save_chain
from tracederiv.logging import RowLogger, logger, logging, set_global_level
from tracederiv.typing import InColumnName

PACKAGE_NAME = "tracederiv"


def this_version() -> str:
    try:
        return importlib.metadata.version(PACKAGE_NAME)
    except importlib.metadata.PackageNotFoundError:
        return "unknown"


@dataclass
class SelfConfigurable:
    """Dataclass that can describe itself as a nested parameter dict and be rebuilt from one"""

    def __post_init__(self):
        self.logger = logging.getLogger(
            f"{type(self).__module__}.{type(self).__name__}"
        )

    def set_log_level(self, level_str: str = "debug"):
        # Root and instance level are kept in sync
        self.logger.setLevel(set_global_level(level_str))

    @property
    def tooltip(self) -> str:
        return (self.__doc__ or "").split("\n")[0]

    @classmethod
    def _get_param_names(cls) -> List[str]:
        init = cls.__init__
        if init is object.__init__:
            return []
        parameters = [
            p
            for p in inspect.signature(init).parameters.values()
            if p.name != "self" and p.kind != p.VAR_KEYWORD
        ]
        if any(p.kind == p.VAR_POSITIONAL for p in parameters):
            raise RuntimeError(
                f"Links must declare all parameters in the signature of __init__ (no *args): {cls}"
            )
        return sorted(p.name for p in parameters)

    @staticmethod
    def _serialize(value: Any, defaults: bool) -> Any:
        if isinstance(value, SelfConfigurable):
            return value.get_params(defaults=defaults, version=False, log_level=False)
        if isinstance(value, (list, tuple)):
            return type(value)(
                SelfConfigurable._serialize(item, defaults) for item in value
            )
        return value

    def get_params(self, defaults=True, version=True, log_level=True) -> dict:
        out = dict()
        if version:
            out["__version__"] = this_version()
        if log_level:
            out["__loglevel__"] = logging.getLevelName(self.logger.getEffectiveLevel())
        out["__class__"] = f"{type(self).__module__}.{type(self).__name__}"

        for key in self._get_param_names():
            value = getattr(self, key)
            if not defaults and self.__dataclass_fields__[key].default == value:
                continue
            out[key] = self._serialize(value, defaults)
        return out

    @staticmethod
    def _instantiate(value: Any) -> Any:
        if isinstance(value, dict) and "__class__" in value:
            return SelfConfigurable.from_params(value)
        if isinstance(value, (list, tuple)):
            return [SelfConfigurable._instantiate(item) for item in value]
        return value

    @classmethod
    def from_params(cls, params: dict) -> Link:
        params = copy.deepcopy(params)

        config_version = params.pop("__version__", None)
        if config_version is not None and config_version != this_version():
            logger.warning(
                f"Version in config {config_version} differs from the installed version {this_version()}."
            )
        log_level_str = params.pop("__loglevel__", None)

        classpath = params.pop("__class__")
        klass = locate(classpath)
        if klass is None:
            raise ValueError(f"Could not locate link class {classpath!r}")

        obj = klass(**{key: cls._instantiate(value) for key, value in params.items()})
        if log_level_str is not None:
            obj.set_log_level(log_level_str)
        return obj

    def to_config_file(self, filename, defaults=True, version=True, log_level=True):
        save_chain(
            self, filename, defaults=defaults, version=version, log_level=log_level
        )

    @classmethod
    def from_config_file(cls, filename) -> Link:
        return load_chain(filename)


@dataclass
class Link(ABC, SelfConfigurable):
    """Base class for all Links

    All links must be @dataclasses and overload the abstract method _apply(self, df: pd.DataFrame) -> pd.DataFrame
    """

    def apply(self, df: pd.DataFrame) -> pd.DataFrame:
        self.logger.info(f"Starting processing of dataframe with {len(df)} rows")
        self.assert_incolumns(df)
        return self._apply(df)

    def __call__(self, df: pd.DataFrame) -> pd.DataFrame:
        return self.apply(df)

    @abstractmethod
    def _apply(self, df: pd.DataFrame) -> pd.DataFrame:
        """Transform the whole dataframe.

        Links that look beyond single rows cannot be partitioned by the hpc links."""

    def __add__(self, other):
        if not other:
            return self  # sum() seeds with 0
        if isinstance(other, Chain):
            return Chain([self] + other.links)
        elif isinstance(other, Link):
            return Chain([self, other])
        raise TypeError("Unsupported type for addition")

    __radd__ = __add__

    @staticmethod
    def _concatenate_strings(str1, str2):
        if pd.notna(str1) and pd.notna(str2):
            return f"{str1}\n{str2}"
        return str1 if pd.notna(str1) else str2

    def append_to_column(
        self, df: pd.DataFrame, data: pd.Series, column_name: str
    ) -> pd.DataFrame:
        """Append data to an existing column line by line, or create it"""
        if column_name not in df:
            df[column_name] = data
        else:
            df[column_name] = df[column_name].combine(data, self._concatenate_strings)
        return df

    def append_errors(self, df: pd.DataFrame, errors: pd.Series) -> pd.DataFrame:
        return self.append_to_column(df, errors, "__error__")

    def append_log(self, df: pd.DataFrame, log: pd.Series) -> pd.DataFrame:
        return self.append_to_column(df, log, "__log__")

    def in_columns(self) -> List[str]:
        """Values of the fields typehinted as InColumnName"""
        return [
            getattr(self, field.name)
            for field in fields(self)
            if field.type in (InColumnName, "InColumnName")
        ]

    def assert_incolumns(self, dataframe: pd.DataFrame):
        expected_columns = self.in_columns()
        if expected_columns:
            self.logger.debug(f"Asserting expected input columns: {expected_columns}")
        missing = set(expected_columns).difference(dataframe.columns)
        assert not missing, f"DataFrame is missing expected input columns: {missing}"


class RowLink(Link):
    """Base class for links that process dataframes row by row

    Subclasses are @dataclasses overloading _row_apply(self, row: pd.Series) -> pd.Series.
    An exception in one row is written to that row's '__error__' column, and rows
    that already carry an error are passed through untouched.
    """

    def __post_init__(self):
        super().__post_init__()
        self.row_logger = RowLogger(self)

    def _apply(self, df):
        raise RuntimeError("RowLink processes rows through _row_apply")

    def apply(self, df: pd.DataFrame) -> pd.DataFrame:
        self.assert_incolumns(df)
        self.logger.info(f"Processing dataframe with {len(df)} rows, row by row")
        if df.empty:
            return df.copy()
        return df.apply(self._safe_row_apply, axis=1)

    def _create_or_append(
        self, row: pd.Series, data: str, column_name: str = "__error__"
    ) -> pd.Series:
        existing = row.get(column_name)
        if isinstance(existing, str) and existing:
            row[column_name] = f"{existing}\n{data}"
        else:
            row[column_name] = data
        return row

    def _safe_row_apply(self, row: pd.Series) -> pd.Series:
        row = copy.deepcopy(row)
        if has_error(row):
            return row
        try:
            return self._row_apply(row)
        except Exception:
            self.logger.debug(f"Row {row.name} failed in {type(self).__name__}")
            return self._create_or_append(row, traceback.format_exc())

    @abstractmethod
    def _row_apply(self, row: pd.Series) -> pd.Series:
        return row


@dataclass
class Chain(Link):
    """Runs links sequentially, one after the other and return the processed dataframe."""

    links: Union[List[Link], Tuple[Link]]

    def set_log_level(self, level_str: str = "debug"):
        super().set_log_level(level_str)
        for link in self.links:
            link.set_log_level(level_str)

    def __add__(self, other):
        if not other:
            return self
        if isinstance(other, Chain):
            return Chain(list(self.links) + list(other.links))
        elif isinstance(other, Link):
            return Chain(list(self.links) + [other])
        raise TypeError("Unsupported type for addition")

    __radd__ = __add__

    def _apply(self, df):
        raise RuntimeError("Chain applies its links in apply")

    def apply(self, df: pd.DataFrame) -> pd.DataFrame:
        self.logger.debug(f"Starting sequential processing of {len(self.links)} links")
        for link in self.links:
            df = link(df)
        self.logger.debug("Sequential processing done")
        return df


@dataclass
class UnionLink(Link):
    """Runs the dataframe through two separate links and merges the two results.

    Merges with 'combine_first', so values from link1 take priority."""

    link1: Link
    link2: Link

    def set_log_level(self, level_str: str = "debug"):
        super().set_log_level(level_str)
        self.link1.set_log_level(level_str)
        self.link2.set_log_level(level_str)

    def _apply(self, df):
        raise RuntimeError("UnionLink applies its links in apply")

    def apply(self, df: pd.DataFrame) -> pd.DataFrame:
        self.logger.debug("Processing first link")
        df1 = self.link1(df.copy())
        self.logger.debug("Processing second link")
        df2 = self.link2(df.copy())
        self.logger.debug("Joining results")
        return df1.combine_first(df2)
