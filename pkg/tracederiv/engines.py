"""Name-based access to the derivative engines, shared by the CLI and the sweep links"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Union

from tracederiv.automata import CLOSURE_ORACLE, REFINED_UNBOUNDED, AutomatonKind
from tracederiv.classical import (
    antimirov_parts,
    antimirov_step,
    brzozowski_derive,
    brzozowski_step,
)
from tracederiv.errormanager import EngineError
from tracederiv.normalizer import TheoryTier, normalize
from tracederiv.oracle import (
    DEFAULT_ORACLE_LENGTH,
    closure_member_oracle,
    enumerate_language,
    semantic_reorder_derivative,
)
from tracederiv.refined import refined_derive, refined_membership
from tracederiv.reordering import (
    antimirov_reorder_parts,
    antimirov_reorder_step,
    brz_reorder_derive,
    brz_reorder_step,
)
from tracederiv.syntax import (
    IndependenceAlphabet,
    Regexp,
    letters_of,
    nullable,
    parse_alphabet,
    parse_regexp,
    parse_word,
    render_regexp,
    render_word,
    sorted_regexps,
)
from tracederiv.typing import Word

ENGINE_NAMES = (
    "brzozowski",
    "antimirov",
    "brzozowski-reorder",
    "antimirov-reorder",
    "refined",
    "oracle",
)


def check_engine(engine: str, bound: Optional[int] = None) -> str:
    if engine not in ENGINE_NAMES:
        raise EngineError(
            f"Unknown engine {engine!r}, expected one of {', '.join(ENGINE_NAMES)}"
        )
    if bound is not None:
        if engine != "refined":
            raise EngineError("A bound is only valid with the refined engine")
        if bound < 1:
            raise EngineError(f"The bound must be at least 1, got {bound}")
    return engine


def default_alphabet(e: Regexp, words: Iterable[Word] = ()) -> IndependenceAlphabet:
    """Letters of the expression and words, every distinct pair independent"""
    letters = set(letters_of(e))
    for word in words:
        letters.update(word)
    return IndependenceAlphabet.commutative(sorted(letters))


def resolve_inputs(
    expr: str, words: Iterable[str] = (), alphabet: Union[str, IndependenceAlphabet, None] = None
):
    """Parse an expression and words, against an alphabet or the default one"""
    if isinstance(alphabet, str):
        alphabet = parse_alphabet(alphabet)
    e = parse_regexp(expr, alphabet)
    parsed_words = [parse_word(word, alphabet) for word in words]
    if alphabet is None:
        alphabet = default_alphabet(e, parsed_words)
    return e, parsed_words, alphabet


def membership(
    engine: str,
    e: Regexp,
    w: Word,
    alphabet: IndependenceAlphabet,
    bound: Optional[int] = None,
    tier: Union[TheoryTier, str, None] = None,
) -> bool:
    """Classical engines decide w in the language of e, the others decide trace-closure membership"""
    check_engine(engine, bound)
    tier = TheoryTier.parse(tier)
    if engine == "brzozowski":
        state = e
        for a in w:
            state = normalize(brzozowski_step(state, a), tier)
        return nullable(state)
    if engine == "brzozowski-reorder":
        state = e
        for a in w:
            state = normalize(brz_reorder_step(state, a, alphabet), tier)
        return nullable(state)
    if engine in ("antimirov", "antimirov-reorder"):
        parts = {e}
        for a in w:
            if engine == "antimirov":
                parts = {normalize(s, tier) for p in parts for s in antimirov_step(p, a)}
            else:
                parts = {
                    normalize(s, tier)
                    for p in parts
                    for s in antimirov_reorder_step(p, a, alphabet)
                }
        return any(map(nullable, parts))
    if engine == "refined":
        return refined_membership(e, w, alphabet, bound)
    return closure_member_oracle(e, w, alphabet)


def _normalized_sorted(regexps, tier) -> List[Regexp]:
    return sorted_regexps({normalize(e, tier) for e in regexps})


@dataclass(frozen=True)
class Derivation:
    """Rendered outcome of a derivative engine along a word"""

    engine: str
    items: List[str]

    def to_dict(self) -> dict:
        return {"engine": self.engine, "items": list(self.items)}

    def render(self) -> str:
        if self.engine in ("brzozowski", "brzozowski-reorder"):
            return self.items[0]
        # state lists contain commas themselves
        if self.engine == "refined":
            return "\n".join(self.items)
        return ", ".join(self.items)


def derive(
    engine: str,
    e: Regexp,
    w: Word,
    alphabet: IndependenceAlphabet,
    bound: Optional[int] = None,
    tier: Union[TheoryTier, str, None] = None,
    max_len: int = DEFAULT_ORACLE_LENGTH,
) -> Derivation:
    """Derivative, parts, state lists, or for the oracle the semantic derivative of the bounded language"""
    check_engine(engine, bound)
    tier = TheoryTier.parse(tier)
    if engine == "brzozowski":
        items = [render_regexp(normalize(brzozowski_derive(e, w), tier))]
    elif engine == "brzozowski-reorder":
        items = [render_regexp(normalize(brz_reorder_derive(e, w, alphabet), tier))]
    elif engine == "antimirov":
        items = list(map(render_regexp, _normalized_sorted(antimirov_parts(e, w), tier)))
    elif engine == "antimirov-reorder":
        items = list(
            map(
                render_regexp,
                _normalized_sorted(antimirov_reorder_parts(e, w, alphabet), tier),
            )
        )
    elif engine == "refined":
        lists = refined_derive(e, w, alphabet, bound)
        if tier is not None:
            lists = {type(g)(normalize(item, tier) for item in g) for g in lists}
        items = [g.render() for g in sorted(lists, key=lambda g: g.sort_key)]
    else:
        language = enumerate_language(e, max_len)
        suffixes = semantic_reorder_derivative(language, w, alphabet)
        items = [
            render_word(v) for v in sorted(suffixes, key=alphabet.word_sort_key)
        ]
    return Derivation(engine, items)


_ENGINE_KINDS = {
    "brzozowski": "classical-brzozowski",
    "antimirov": "classical-antimirov",
    "brzozowski-reorder": "reorder-brzozowski",
    "antimirov-reorder": "reorder-antimirov",
}


def automaton_kind(engine: str, bound: Optional[int] = None) -> AutomatonKind:
    """Automaton kind generated by an engine; automaton kind names are accepted as well"""
    if engine not in ENGINE_NAMES:
        return AutomatonKind.parse(engine)
    check_engine(engine, bound)
    if engine == "oracle":
        return CLOSURE_ORACLE
    if engine == "refined":
        return REFINED_UNBOUNDED if bound is None else AutomatonKind.refined_truncated(bound)
    return AutomatonKind(_ENGINE_KINDS[engine])
