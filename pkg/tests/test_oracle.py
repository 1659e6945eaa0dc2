import random
from itertools import product

import pytest

from tracederiv.corpus import random_alphabet, regexp_corpus, words_up_to
from tracederiv.errormanager import LengthCapError
from tracederiv.oracle import (
    DEFAULT_CAP,
    ScatterMode,
    closing_semantics,
    closure_language,
    closure_member_oracle,
    dependence_graph,
    enumerate_language,
    equivalent_members,
    letters_connected,
    reorder_concat,
    reorder_concat_languages,
    scatter_check,
    semantic_reorder_derivative,
    semantic_reorderable_part,
    trace_class,
    trace_equiv,
    trace_key,
    word_connected,
)
from tracederiv.syntax import IndependenceAlphabet, parse_alphabet, parse_regexp, parse_word


def words(*texts):
    return {parse_word(text) for text in texts}


@pytest.fixture
def abc_alphabet():
    # a independent of b and c, b and c dependent
    return parse_alphabet("letters: a b c\nindep: a b, a c")


@pytest.fixture
def ab_c_alphabet():
    # only a and b commute
    return parse_alphabet("letters: a b c\nindep: a b")


@pytest.mark.parametrize(
    "u, v, expected",
    [("ab", "ba", True), ("abab", "aabb", True), ("ab", "abb", False)],
)
def test_trace_equiv_independent(ab_independent, u, v, expected):
    assert trace_equiv(parse_word(u), parse_word(v), ab_independent) is expected


def test_trace_equiv_dependent(ab_dependent, abc_alphabet):
    assert not trace_equiv(parse_word("ab"), parse_word("ba"), ab_dependent)
    assert trace_equiv(parse_word("abc"), parse_word("bca"), abc_alphabet)
    assert not trace_equiv(parse_word("bc"), parse_word("cb"), abc_alphabet)


def test_trace_key_matches_trace_class(abc_alphabet):
    w = parse_word("abcab")
    cls = trace_class(w, abc_alphabet)
    assert {trace_key(z, abc_alphabet) for z in cls} == {trace_key(w, abc_alphabet)}
    assert words("ab", "ba") == trace_class(parse_word("ab"), abc_alphabet)


def test_enumerate_language():
    assert enumerate_language(parse_regexp("(ab)*"), 4) == words("", "ab", "abab")
    assert enumerate_language(parse_regexp("0"), 9) == frozenset()
    assert enumerate_language(parse_regexp("aa+ab+b"), 2) == words("aa", "ab", "b")


def test_length_cap():
    with pytest.raises(LengthCapError):
        enumerate_language(parse_regexp("a*"), DEFAULT_CAP + 1)
    assert len(enumerate_language(parse_regexp("a*"), DEFAULT_CAP + 1, cap=20)) == 14


def test_closure_language(ab_independent):
    assert closure_language(parse_regexp("(ab)*"), 2, ab_independent) == words("", "ab", "ba")


@pytest.mark.parametrize("w, expected", [("aabb", True), ("aab", False), ("", True), ("bbaa", True)])
def test_closure_member_oracle(ab_independent, w, expected):
    assert closure_member_oracle(parse_regexp("(ab)*"), parse_word(w), ab_independent) is expected


def test_equivalent_members_in_shortlex_order(ab_independent):
    members = equivalent_members(parse_regexp("(ab)*+a*b*"), parse_word("abba"), ab_independent)
    assert members == [parse_word(w) for w in ["aabb", "abab"]]


def test_closure_membership_beyond_enumeration_cap():
    alphabet = parse_alphabet("letters: a b c\nindep: a b")
    e = parse_regexp("a*b*c(ab)*(a*+b*)+(ab)*(a*+b*)ca*b*")
    assert closure_member_oracle(e, parse_word("aaabbbcaaabbb"), alphabet)
    assert not closure_member_oracle(e, parse_word("aaabbbcc"), alphabet)


@pytest.mark.parametrize(
    "u, v, expected",
    [
        ("a", "b", {"ab", "ba"}),
        ("aa", "b", {"aab", "aba", "baa"}),
        ("a", "bb", {"abb", "bab", "bba"}),
        ("ab", "ba", {"abba"}),
    ],
)
def test_reorder_concat(ab_independent, u, v, expected):
    assert reorder_concat(parse_word(u), parse_word(v), ab_independent) == words(*expected)


def test_reorder_concat_without_independence(ab_dependent):
    assert reorder_concat(parse_word("ab"), parse_word("ba"), ab_dependent) == words("abba")


def test_reorder_concat_languages(ab_independent):
    result = reorder_concat_languages(words("a", ""), words("b"), ab_independent)
    assert result == words("ab", "ba", "b")
    assert reorder_concat_languages(words("aa"), words("b"), ab_independent, max_len=2) == frozenset()


@pytest.mark.parametrize("e, alphabet", regexp_corpus(30, max_size=6, seed=13))
def test_closing_semantics_is_the_closure(e, alphabet):
    assert closing_semantics(e, 5, alphabet) == closure_language(e, 5, alphabet)


def test_scatter_strict(abc_alphabet):
    witness = scatter_check(parse_word("ab"), parse_word("aabcba"), abc_alphabet)
    assert witness.u_blocks == (("a",), ("b",))
    assert witness.v_blocks == ((), ("a",), ("c", "b", "a"))
    assert witness.degree == 2
    assert witness.scattered == parse_word("aabcba")
    assert witness.suffix == parse_word("acba")


def test_scatter_prefix_equivalent(abc_alphabet):
    u, z = parse_word("ba"), parse_word("aabcba")
    assert scatter_check(u, z, abc_alphabet) is None
    witness = scatter_check(u, z, abc_alphabet, ScatterMode.PREFIX_EQUIV)
    assert witness.prefix == parse_word("ab")
    assert witness.degree == 2


def test_scatter_empty_prefix(abc_alphabet):
    z = parse_word("cab")
    witness = scatter_check((), z, abc_alphabet, ScatterMode.BOTH_EQUIV)
    assert witness.degree == 0
    assert witness.v_blocks == (z,)


def test_scatter_degree_and_suffix_limits(abc_alphabet):
    u, z = parse_word("ab"), parse_word("aabcba")
    assert scatter_check(u, z, abc_alphabet, max_degree=1) is None
    assert scatter_check(u, z, abc_alphabet, ScatterMode.BOTH_EQUIV, suffix=parse_word("aacb")) is not None
    assert scatter_check(u, z, abc_alphabet, ScatterMode.BOTH_EQUIV, suffix=parse_word("abca")) is None


def test_scatter_rejects_dependent_crossing(ab_c_alphabet):
    # c is dependent on a, so a cannot be taken after the skipped c
    assert scatter_check(parse_word("a"), parse_word("ca"), ab_c_alphabet) is None


def test_connectedness(ab_independent):
    acb = IndependenceAlphabet.from_letters("abc", [("a", "b")])
    assert not word_connected(parse_word("ab"), ab_independent)
    assert word_connected(parse_word("a"), ab_independent)
    assert word_connected(parse_word("acb"), acb)
    assert letters_connected([], acb)
    assert set(dependence_graph("abc", acb).edges) == {("a", "c"), ("b", "c")}


L = words("", "a", "b", "ca", "aa", "bbb", "babca", "abbaba")


def test_semantic_reorder_derivative(ab_c_alphabet):
    assert semantic_reorder_derivative(L, parse_word("a"), ab_c_alphabet) == words("", "a", "bbca", "bbaba")
    assert semantic_reorder_derivative(L, parse_word("aa"), ab_c_alphabet) == words("", "bbba")
    assert semantic_reorder_derivative(L, (), ab_c_alphabet) == L


def test_semantic_reorderable_part(ab_c_alphabet, ab_independent):
    expected = words("", "b", "bbb")
    assert semantic_reorderable_part(L, parse_word("a"), ab_c_alphabet) == expected
    assert semantic_reorderable_part(L, parse_word("aa"), ab_c_alphabet) == expected
    assert semantic_reorderable_part(L, (), ab_c_alphabet) == L
    assert semantic_reorderable_part(words("ab"), parse_word("b"), ab_independent) == frozenset()


ALPHABETS = [random_alphabet(random.Random(seed), "abc") for seed in range(5)]


@pytest.mark.parametrize("alphabet", ALPHABETS)
def test_trace_equiv_is_an_equivalence(alphabet):
    ws = list(words_up_to(alphabet.sigma, 4))
    for w in ws:
        equivalent = trace_class(w, alphabet)
        assert trace_equiv(w, w, alphabet)
        for z in ws:
            assert trace_equiv(w, z, alphabet) is (z in equivalent)
            assert trace_equiv(w, z, alphabet) is trace_equiv(z, w, alphabet)
        for x in equivalent:
            assert all(trace_equiv(x, y, alphabet) for y in equivalent)


@pytest.mark.parametrize("alphabet", ALPHABETS)
def test_trace_equiv_is_a_congruence(alphabet):
    short = list(words_up_to(alphabet.sigma, 2))
    for u in short:
        for v in short:
            for u2 in trace_class(u, alphabet):
                for v2 in trace_class(v, alphabet):
                    assert trace_equiv(u + v, u2 + v2, alphabet)


@pytest.mark.parametrize("alphabet", ALPHABETS)
def test_reorder_concat_is_strict_scattering(alphabet):
    short = list(words_up_to(alphabet.sigma, 2))
    for u in short:
        for v in short:
            concat = reorder_concat(u, v, alphabet)
            for z in product(alphabet.sigma, repeat=len(u) + len(v)):
                witness = scatter_check(u, z, alphabet, ScatterMode.STRICT)
                scattered = witness is not None and witness.suffix == v
                assert (z in concat) is scattered


@pytest.mark.parametrize("alphabet", ALPHABETS)
def test_equivalence_is_scattering_up_to_equivalence(alphabet):
    short = list(words_up_to(alphabet.sigma, 2))
    for u in short:
        for v in short:
            for z in product(alphabet.sigma, repeat=len(u) + len(v)):
                witness = scatter_check(u, z, alphabet, ScatterMode.BOTH_EQUIV, suffix=v)
                assert trace_equiv(u + v, z, alphabet) is (witness is not None)


@pytest.mark.parametrize("e, alphabet", regexp_corpus(15, max_size=7, seed=47))
def test_semantic_derivative_laws(e, alphabet):
    language = enumerate_language(e, 5)
    short = list(words_up_to(alphabet.sigma, 2))
    for u in short:
        after_u = semantic_reorder_derivative(language, u, alphabet)
        for u2 in trace_class(u, alphabet):
            assert semantic_reorder_derivative(language, u2, alphabet) == after_u
        for v in short:
            assert semantic_reorder_derivative(after_u, v, alphabet) == (
                semantic_reorder_derivative(language, u + v, alphabet)
            )
