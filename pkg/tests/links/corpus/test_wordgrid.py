from tracederiv.links import WordGrid

from ...basetest import BaseTest


class TestWordGrid(BaseTest):
    _Link = WordGrid
    _classparams = {"max_len": 2}
    _alt_classparams = {"max_len": 3}

    def test_grid(self, link, sample_dataframe):
        df_o = link(sample_dataframe)
        assert len(df_o) == 3 * 7
        assert list(df_o.word[:7]) == ["", "a", "b", "aa", "ab", "ba", "bb"]
        assert list(df_o.expr[:7]) == ["(ab)*"] * 7
