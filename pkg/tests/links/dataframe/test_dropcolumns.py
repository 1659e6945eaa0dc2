from tracederiv.links import DropColumns

from ...basetest import BaseTest


class TestDropColumns(BaseTest):
    _Link = DropColumns
    _classparams = {"columns": ["nodes"]}
    _alt_classparams = {"columns": ["width"]}

    def test_dropping_column(self, link, sample_dataframe):
        df_dropped = link(sample_dataframe)
        assert "nodes" in sample_dataframe
        assert "nodes" not in df_dropped

    def test_absent_columns_are_ignored(self, sample_dataframe):
        df_dropped = DropColumns(columns=["nodes", "derivative"])(sample_dataframe)
        assert list(df_dropped.columns) == ["expr", "word", "alphabet", "width"]
