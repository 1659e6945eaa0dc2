import pandas as pd
import pytest

from tracederiv import Chain
from tracederiv.links import Agreement, Membership

from ...basetest import BaseTest


class TestAgreement(BaseTest):
    _Link = Agreement
    _classparams = {"columns": ["nodes", "width"], "out_column": "agree"}
    _alt_classparams = {"columns": ["width"], "out_column": "agree2"}

    def test_agreement(self, link, sample_dataframe):
        df_o = link(sample_dataframe)
        assert list(df_o.agree) == [False, False, False]


def test_engines_agree(sample_dataframe):
    chain = Chain(
        [
            Membership(engine="brzozowski-reorder"),
            Membership(engine="antimirov-reorder"),
            Membership(engine="refined"),
            Membership(engine="oracle"),
            Membership(engine="brzozowski"),
            Agreement(
                columns=[
                    "member_brzozowski-reorder",
                    "member_antimirov-reorder",
                    "member_refined",
                    "member_oracle",
                ]
            ),
            Agreement(columns=["member_oracle", "member_brzozowski"], out_column="classical"),
        ]
    )
    df_o = chain(sample_dataframe)
    assert df_o.agree.all()
    assert list(df_o.classical) == [False, True, True]


def test_missing_columns(sample_dataframe):
    with pytest.raises(KeyError):
        Agreement(columns=["member_oracle"])(sample_dataframe)


def test_empty_dataframe():
    df_o = Agreement(columns=["x"])(pd.DataFrame({"x": []}))
    assert "agree" in df_o
    assert df_o.empty
