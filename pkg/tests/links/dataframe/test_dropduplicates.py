from tracederiv.links import DropDuplicates

from ...basetest import BaseTest


class TestDropDuplicates(BaseTest):
    _Link = DropDuplicates
    _classparams = {"columns": ["alphabet"]}
    _alt_classparams = {"columns": ["width"]}

    def test_duplicate_removal(self, link, sample_dataframe):
        df_o = link(sample_dataframe)
        assert max(sample_dataframe.alphabet.value_counts()) > 1
        assert max(df_o.alphabet.value_counts()) == 1
        assert list(df_o.expr) == ["(ab)*", "aa+ab+b"]


class TestDropDuplicatesNoConf(BaseTest):
    _Link = DropDuplicates
    _classparams = {"columns": []}
    _alt_classparams = {"columns": ["expr"]}
