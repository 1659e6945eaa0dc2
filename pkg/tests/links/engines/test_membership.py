import pytest

from tracederiv.errormanager import EngineError
from tracederiv.links import Membership

from ...basetest import BaseErrorTest


class TestMembership(BaseErrorTest):
    _Link = Membership
    _classparams = {"engine": "refined"}
    _alt_classparams = {"engine": "oracle"}

    def test_default_column(self, link, sample_dataframe):
        df_o = link(sample_dataframe)
        assert list(df_o.member_refined) == [True, True, True]


class TestMembershipClassical(BaseErrorTest):
    _Link = Membership
    _classparams = {"engine": "brzozowski", "out_column": "member"}
    _alt_classparams = {"engine": "antimirov", "out_column": "member2"}

    def test_classical_membership(self, link, sample_dataframe):
        df_o = link(sample_dataframe)
        assert list(df_o.member) == [False, True, True]


def test_bound_needs_refined_engine():
    with pytest.raises(EngineError):
        Membership(engine="oracle", bound=2)


def test_default_alphabet_when_column_missing(sample_dataframe):
    df = sample_dataframe.drop(columns=["alphabet"])
    df_o = Membership(engine="antimirov-reorder")(df)
    assert list(df_o["member_antimirov-reorder"]) == [True, True, True]
