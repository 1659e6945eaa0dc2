import json

import pandas as pd
import pytest
from click.testing import CliRunner

from tracederiv import Chain
from tracederiv.io_utilities import load_dict
from tracederiv.links import Agreement, Membership
from tracederiv.scripts import tracederiv


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def dependent_alphabet(tmp_path):
    filename = tmp_path / "ab.indep"
    filename.write_text("letters: a b\nindep:\n")
    return str(filename)


def invoke(runner, *args):
    return runner.invoke(tracederiv, list(args))


def test_derive_normalized(runner):
    result = invoke(runner, "derive", "--expr", "(aa+ab+b)*", "--word", "bb", "--normalize", "t1")
    assert result.exit_code == 0
    assert result.output.strip() == "(aa)*(a+1)(aa)*(a+1)(aa+ab+b)*"


def test_derive_json(runner):
    result = invoke(
        runner, "derive", "--expr", "(ab)*", "--word", "b", "--normalize", "t1", "--json"
    )
    assert result.exit_code == 0
    assert json.loads(result.output) == {
        "expr": "(ab)*",
        "word": "b",
        "normalize": "t1",
        "engine": "brzozowski-reorder",
        "items": ["a(ab)*"],
    }


def test_parts(runner):
    result = invoke(runner, "parts", "--expr", "aa+ab+b", "--letter", "b")
    assert result.exit_code == 0
    assert result.output.strip() == "a1, 1"


def test_parts_needs_single_letter(runner):
    result = invoke(runner, "parts", "--expr", "aa+ab+b", "--letter", "ab")
    assert result.exit_code == 2


def test_refine(runner):
    result = invoke(runner, "refine", "--expr", "a*", "--word", "")
    assert result.exit_code == 0
    assert result.output.strip() == "[a*]"


def test_member_refined_bound(runner):
    result = invoke(runner, "member", "--expr", "(ab)*", "--word", "ba", "--bound", "3")
    assert result.exit_code == 0
    assert result.output.strip() == "true"


def test_member_with_alphabet_file(runner, dependent_alphabet):
    result = invoke(
        runner, "member", "--alphabet", dependent_alphabet, "--expr", "(ab)*",
        "--word", "ba", "--engine", "brzozowski-reorder",
    )
    assert result.exit_code == 0
    assert result.output.strip() == "false"


def test_member_json(runner):
    result = invoke(runner, "member", "--expr", "(ab)*", "--word", "ba", "--json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["member"] is True
    assert data["engine"] == "refined"
    assert data["bound"] is None


def test_member_strict(runner):
    result = invoke(runner, "member", "--expr", "(ab)*", "--word", "a", "--strict")
    assert result.exit_code == 1
    assert result.output.strip() == "false"


@pytest.mark.parametrize(
    "args",
    [
        ["member", "--expr", "(a", "--word", "a"],
        ["member", "--expr", "a*", "--word", "a", "--engine", "glushkov"],
        ["member", "--expr", "a*", "--word", "a", "--bound", "0"],
        ["member", "--expr", "a*", "--word", "a", "--engine", "oracle", "--bound", "2"],
        ["build", "--expr", "a*", "--engine", "oracle", "--max-len", "13"],
        ["derive", "--expr", "a*", "--normalize", "t2"],
        ["member", "--alphabet", "missing.indep", "--expr", "a*"],
    ],
)
def test_usage_errors(runner, args):
    assert invoke(runner, *args).exit_code == 2


def test_word_outside_alphabet(runner, dependent_alphabet):
    result = invoke(
        runner, "member", "--alphabet", dependent_alphabet, "--expr", "a*", "--word", "c"
    )
    assert result.exit_code == 2
    assert "--word" in result.output


def test_build_with_dot(runner, tmp_path):
    dot_file = tmp_path / "a_star_b_star.dot"
    result = invoke(
        runner, "build", "--expr", "a*b*", "--normalize", "t1", "--dot", str(dot_file)
    )
    assert result.exit_code == 0
    assert "kind: reorder-antimirov" in result.output
    assert "states: 1" in result.output
    assert "complete: true" in result.output
    assert "digraph" in dot_file.read_text()


def test_build_json(runner):
    result = invoke(runner, "build", "--expr", "a", "--engine", "antimirov", "--json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["kind"] == "classical-antimirov"
    assert len(data["states"]) == 2


def test_build_strict_incomplete(runner):
    result = invoke(
        runner, "build", "--expr", "(ab)*", "--engine", "brzozowski-reorder",
        "--normalize", "t1", "--budget", "5", "--strict",
    )
    assert result.exit_code == 1


def test_build_unnormalized_star_stops_exploring(runner):
    result = invoke(runner, "build", "--expr", "a*")
    assert result.exit_code == 0
    assert "complete: false" in result.output


def test_build_oracle(runner):
    result = invoke(runner, "build", "--expr", "(ab)*", "--engine", "oracle", "--max-len", "2")
    assert result.exit_code == 0
    assert "kind: closure-oracle" in result.output
    assert "states: 5" in result.output
    assert "finals: 2" in result.output
    assert "complete: true" in result.output


def test_analyze(runner):
    result = invoke(runner, "analyze", "--expr", "(ab)*")
    assert result.exit_code == 0
    assert result.output.strip() == "connected: false\nstar-connected: false"


def test_analyze_json(runner, dependent_alphabet):
    result = invoke(
        runner, "analyze", "--alphabet", dependent_alphabet, "--expr", "(ab)*", "--json", "--strict"
    )
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["star_connected"] is True
    assert data["letter_sets"] == [[], ["a", "b"]]


def test_rank_with_word(runner):
    result = invoke(
        runner, "rank", "--expr", "(ab)*(a*+b*)", "--bound", "3", "--max-len", "8",
        "--word", "aaaabbbb",
    )
    assert result.exit_code == 0
    assert result.output.strip() == "rank 3: refuted at aaaabbbb split (aaaa, bbbb)"


def test_rank_holds_strict(runner):
    result = invoke(runner, "rank", "--expr", "a*", "--bound", "1", "--max-len", "4", "--strict")
    assert result.exit_code == 0
    assert result.output.strip() == "rank 1: holds-up-to-length"


def test_oracle_listing(runner):
    result = invoke(runner, "oracle", "--expr", "(ab)*", "--max-len", "2")
    assert result.exit_code == 0
    assert result.output.strip() == "ε, ab, ba"


def test_oracle_membership(runner):
    result = invoke(runner, "oracle", "--expr", "(ab)*", "--word", "bbaa")
    assert result.exit_code == 0
    assert result.output.strip() == "true"


def test_run_chain(runner, tmp_path, csv_filename):
    config_file = str(tmp_path / "sweep.yaml")
    out_file = str(tmp_path / "out.csv")
    chain = Chain(
        [
            Membership(engine="refined"),
            Membership(engine="oracle"),
            Agreement(columns=["member_refined", "member_oracle"]),
        ]
    )
    chain.to_config_file(config_file)
    result = invoke(
        runner, "run", config_file, "--in_file", str(csv_filename), "--out_file", out_file
    )
    assert result.exit_code == 0
    df = pd.read_csv(out_file)
    assert list(df.member_refined) == [True, True, True]
    assert df.agree.all()


def test_run_strips_errors(runner, tmp_path):
    in_file = tmp_path / "in.csv"
    pd.DataFrame({"expr": ["a*", "(a"], "word": ["aa", "a"]}).to_csv(in_file, index=False)
    config_file = str(tmp_path / "sweep.json")
    Membership(engine="oracle").to_config_file(config_file)
    out_file, error_file = tmp_path / "out.csv", tmp_path / "errors.csv"
    result = invoke(
        runner, "run", config_file, "--in_file", str(in_file),
        "--out_file", str(out_file), "--error_file", str(error_file),
    )
    assert result.exit_code == 0
    assert list(pd.read_csv(out_file).expr) == ["a*"]
    assert list(pd.read_csv(error_file).expr) == ["(a"]


def test_config_rewrite(runner, tmp_path):
    in_config = str(tmp_path / "in.yaml")
    out_config = str(tmp_path / "out.json")
    Chain([Membership(engine="refined", bound=2)]).to_config_file(in_config)
    result = invoke(runner, "config", in_config, out_config, "--no-defaults", "--no-version")
    assert result.exit_code == 0
    params = load_dict(out_config)
    assert "__version__" not in params
    assert "__loglevel__" in params
    assert params["__class__"] == "tracederiv.base.Chain"
    assert params["links"][0] == {
        "__class__": "tracederiv.links.engines.Membership",
        "engine": "refined",
        "bound": 2,
    }
