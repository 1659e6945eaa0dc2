import logging

import pandas as pd
import pytest

from tracederiv.links import RankCheck
from tracederiv.logging import RowLogger, set_global_level


@pytest.fixture
def restore_root_level():
    level = logging.getLogger().level
    yield
    logging.getLogger().setLevel(level)


def test_set_global_level(restore_root_level):
    assert set_global_level("debug") == logging.DEBUG
    assert logging.getLogger().level == logging.DEBUG
    with pytest.raises(ValueError):
        set_global_level("chatty")


def test_row_logger_writes_log_column(restore_root_level):
    link = RankCheck(bound=1, max_len=4)
    link.set_log_level("info")
    df = pd.DataFrame({"expr": ["(ab)*"], "alphabet": ["letters: a b; indep: a b"]})
    df_o = link(df)
    assert df_o["__log__"][0] == "INFO: Bound 1 refuted at aabb"


def test_row_logger_respects_level(restore_root_level):
    link = RankCheck()
    link.set_log_level("warning")
    row = pd.Series({"expr": "a"})
    assert "__log__" not in RowLogger(link).info("hidden", row=row)
    assert RowLogger(link).warning("shown", row=row)["__log__"] == "WARNING: shown"
