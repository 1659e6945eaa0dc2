import pytest

from tracederiv.classical import (
    antimirov_parts,
    antimirov_step,
    brzozowski_derive,
    brzozowski_step,
    classical_closure_set,
)
from tracederiv.corpus import regexp_corpus, words_up_to
from tracederiv.oracle import enumerate_language
from tracederiv.syntax import ONE, ZERO, Cat, Char, Star, letters_of, nullable, parse_regexp, size_metrics


def p(text):
    return parse_regexp(text)


def test_brzozowski_letter():
    assert brzozowski_step(Char("a"), "a") == ONE
    assert brzozowski_step(Char("a"), "b") == ZERO


def test_brzozowski_empty_word_is_identity():
    e = p("(aa+ab+b)*")
    assert brzozowski_derive(e, ()) is e


def test_brzozowski_star():
    assert brzozowski_step(p("a*"), "a") == Cat(ONE, Star(Char("a")))


def test_brzozowski_cat_with_nullable_left():
    assert nullable(brzozowski_derive(p("a*b"), "aab"))
    assert not nullable(brzozowski_derive(p("a*b"), "aba"))


def test_antimirov_steps():
    assert antimirov_step(Char("a"), "a") == {ONE}
    assert antimirov_step(p("aa+ab+b"), "b") == {ONE}
    assert antimirov_step(ZERO, "a") == frozenset()


def test_antimirov_parts_along_word():
    parts = antimirov_parts(p("(ab)*"), "ab")
    assert any(nullable(part) for part in parts)
    assert antimirov_parts(p("(ab)*"), "ba") == frozenset()


@pytest.mark.parametrize(
    "text, expected",
    [("a", {"a", "1"}), ("ab", {"ab", "1b", "1"}), ("0", {"0"})],
)
def test_classical_closure_set(text, expected):
    assert classical_closure_set(p(text)) == {p(item) for item in expected}


def _reachable(e):
    seen, frontier = {e}, [e]
    letters = sorted(letters_of(e))
    while frontier:
        state = frontier.pop()
        for a in letters:
            for successor in antimirov_step(state, a):
                if successor not in seen:
                    seen.add(successor)
                    frontier.append(successor)
    return seen


@pytest.mark.parametrize("e, alphabet", regexp_corpus(50, seed=7))
def test_reachable_parts_lie_in_closure_set(e, alphabet):
    closure = classical_closure_set(e)
    assert _reachable(e) <= closure
    assert len(closure) <= size_metrics(e).alphabetic_width + 1


@pytest.mark.parametrize("e, alphabet", regexp_corpus(20, seed=11))
def test_engines_agree_with_enumeration(e, alphabet):
    language = enumerate_language(e, 5)
    for w in words_up_to(alphabet.sigma, 5):
        in_language = w in language
        assert nullable(brzozowski_derive(e, w)) is in_language
        assert any(map(nullable, antimirov_parts(e, w))) is in_language
