import pytest

from tracederiv.links import KeepColumns

from ...basetest import BaseTest


class TestKeepColumns(BaseTest):
    _Link = KeepColumns
    _classparams = {"columns": ["expr", "word"]}
    _alt_classparams = {"columns": ["alphabet"]}

    def test_keep_columns(self, link, sample_dataframe):
        df_kept = link(sample_dataframe)
        assert "nodes" in sample_dataframe
        assert list(df_kept.columns) == ["expr", "word"]

    def test_missing_column(self, sample_dataframe):
        with pytest.raises(KeyError):
            KeepColumns(columns=["member_oracle"])(sample_dataframe)


class TestKeepColumnsEmptyConf(BaseTest):
    _Link = KeepColumns
    _classparams = {"columns": []}
    _alt_classparams = {"columns": ["nodes"]}
