import pandas as pd
import pytest

from tracederiv.links.dataframe import NullLink
from tracederiv.syntax import IndependenceAlphabet

AB_INDEPENDENT = "letters: a b; indep: a b"


@pytest.fixture
def sample_dataframe() -> pd.DataFrame:
    return pd.DataFrame(
        {
            "expr": ["(ab)*", "a*b*", "aa+ab+b"],
            "word": ["ba", "ab", "b"],
            "alphabet": [AB_INDEPENDENT, AB_INDEPENDENT, "letters: a b; indep:"],
            "nodes": [4, 5, 9],
            "width": [2, 2, 5],
        },
    )


@pytest.fixture
def ab_independent() -> IndependenceAlphabet:
    return IndependenceAlphabet.from_letters("ab", [("a", "b")])


@pytest.fixture
def ab_dependent() -> IndependenceAlphabet:
    return IndependenceAlphabet.from_letters("ab")


@pytest.fixture
def testlink():
    return NullLink(name="test1")


@pytest.fixture
def testlink2():
    return NullLink(name="test2")


@pytest.fixture(scope="session")
def csv_filename(tmp_path_factory):
    df = pd.DataFrame(
        {
            "expr": ["(ab)*", "1", "a*b*"],
            "word": ["ab", "", "ba"],
            "alphabet": [AB_INDEPENDENT] * 3,
        },
    )
    filename = tmp_path_factory.mktemp("data") / "data.csv"
    df.to_csv(filename, index=False)
    return filename
