from tracederiv.links import Query

from ...basetest import BaseTest


class TestQuery(BaseTest):
    _Link = Query
    _classparams = {"query": "nodes > 4"}
    _alt_classparams = {"query": "width < 3"}

    def test_query(self, link, sample_dataframe):
        df_selected = link(sample_dataframe)
        assert min(df_selected["nodes"]) > 4
        assert min(sample_dataframe["nodes"]) == 4
        assert list(df_selected.expr) == ["a*b*", "aa+ab+b"]


class TestQueryNoConf(BaseTest):
    _Link = Query
    _classparams = {"query": ""}
    _alt_classparams = {"query": "width < 3"}

    def test_empty_query_keeps_rows(self, link, sample_dataframe):
        assert len(link(sample_dataframe)) == len(sample_dataframe)
