"""Connectedness decisions and bounded scattering-rank checks"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Tuple

from tracederiv.classical import antimirov_step
from tracederiv.oracle import (
    DEFAULT_CAP,
    ScatterMode,
    check_cap,
    closure_language,
    closure_member_oracle,
    equivalent_members,
    letters_connected,
    scatter_check,
)
from tracederiv.syntax import (
    Cat,
    Char,
    IndependenceAlphabet,
    One,
    Regexp,
    Star,
    Sum,
    Zero,
    is_empty,
    letters_of,
    nullable,
    render_word,
)
from tracederiv.typing import Letter, Word

log = logging.getLogger(__name__)


def accepted_alphabets(e: Regexp) -> FrozenSet[FrozenSet[Letter]]:
    """Sets of letters Σ(w) over all words w of the language of e.

    Explores the classical Antimirov automaton with states paired with the
    letters consumed so far."""
    letters = sorted(letters_of(e))
    start = (e, frozenset())
    seen = {start}
    queue = deque([start])
    found = set()
    while queue:
        state, consumed = queue.popleft()
        if nullable(state):
            found.add(consumed)
        for a in letters:
            for successor in antimirov_step(state, a):
                if is_empty(successor):
                    continue
                pair = (successor, consumed | {a})
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
    return frozenset(found)


def language_connected(e: Regexp, alphabet: IndependenceAlphabet) -> bool:
    return all(
        letters_connected(letters, alphabet) for letters in accepted_alphabets(e)
    )


def star_connected(e: Regexp, alphabet: IndependenceAlphabet) -> bool:
    """Every starred subexpression has a connected language"""
    if isinstance(e, (Char, Zero, One)):
        return True
    if isinstance(e, Star):
        return star_connected(e.body, alphabet) and language_connected(e.body, alphabet)
    return star_connected(e.left, alphabet) and star_connected(e.right, alphabet)


class RankKind(str, Enum):
    RANK = "rank"
    UNIFORM = "uniform-rank"


class Outcome(str, Enum):
    HOLDS = "holds-up-to-length"
    REFUTED = "refuted"


@dataclass(frozen=True)
class RankVerdict:
    kind: RankKind
    bound: int
    max_len: int
    outcome: Outcome
    word: Optional[Word] = None
    split: Optional[Tuple[Word, Word]] = None

    def __post_init__(self):
        if self.outcome is Outcome.REFUTED and self.word is None:
            raise ValueError("A refuted claim needs a counterexample word")

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def counterexample(self) -> Optional[Tuple[Word, Optional[Tuple[Word, Word]]]]:
        if self.word is None:
            return None
        return self.word, self.split

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "bound": self.bound,
            "max_len": self.max_len,
            "outcome": self.outcome.value,
            "word": None if self.word is None else render_word(self.word, empty=""),
            "split": None
            if self.split is None
            else [render_word(part, empty="") for part in self.split],
        }


def split_witnessed(
    u: Word, v: Word, z: Word, alphabet: IndependenceAlphabet, bound: int
) -> bool:
    """u scatters into z with degree at most bound, leaving a suffix equivalent to v"""
    return (
        scatter_check(u, z, alphabet, ScatterMode.BOTH_EQUIV, bound, suffix=v)
        is not None
    )


def _closure_words(
    e: Regexp,
    alphabet: IndependenceAlphabet,
    max_len: int,
    words: Optional[Iterable[Word]],
    cap: int,
) -> List[Word]:
    if words is None:
        check_cap(max_len, cap)
        return sorted(
            closure_language(e, max_len, alphabet, cap), key=alphabet.word_sort_key
        )
    selected = []
    for w in map(tuple, words):
        if closure_member_oracle(e, w, alphabet):
            selected.append(w)
        else:
            log.warning(f"Skipping {render_word(w)}, it is not in the trace closure")
    return selected


def check_rank(
    e: Regexp,
    alphabet: IndependenceAlphabet,
    bound: int,
    max_len: int,
    words: Optional[Iterable[Word]] = None,
    cap: int = DEFAULT_CAP,
) -> RankVerdict:
    """Every split w = uv of a closure word must be witnessed by some z in the language"""
    for w in _closure_words(e, alphabet, max_len, words, cap):
        candidates = equivalent_members(e, w, alphabet)
        for k in range(len(w) + 1):
            u, v = w[:k], w[k:]
            if not any(split_witnessed(u, v, z, alphabet, bound) for z in candidates):
                log.info(f"Rank {bound} refuted at {render_word(w)} split after {k}")
                return RankVerdict(
                    RankKind.RANK, bound, max_len, Outcome.REFUTED, w, (u, v)
                )
    return RankVerdict(RankKind.RANK, bound, max_len, Outcome.HOLDS)


def check_uniform_rank(
    e: Regexp,
    alphabet: IndependenceAlphabet,
    bound: int,
    max_len: int,
    words: Optional[Iterable[Word]] = None,
    cap: int = DEFAULT_CAP,
) -> RankVerdict:
    """Every closure word needs one z in the language witnessing all of its splits"""
    for w in _closure_words(e, alphabet, max_len, words, cap):
        splits = [(w[:k], w[k:]) for k in range(len(w) + 1)]
        if not any(
            all(split_witnessed(u, v, z, alphabet, bound) for u, v in splits)
            for z in equivalent_members(e, w, alphabet)
        ):
            log.info(f"Uniform rank {bound} refuted at {render_word(w)}")
            return RankVerdict(RankKind.UNIFORM, bound, max_len, Outcome.REFUTED, w)
    return RankVerdict(RankKind.UNIFORM, bound, max_len, Outcome.HOLDS)


def estimate_rank(
    e: Regexp,
    alphabet: IndependenceAlphabet,
    max_len: int,
    max_bound: int,
    uniform: bool = False,
) -> Optional[int]:
    """Least bound N <= max_bound for which the check holds up to max_len"""
    check = check_uniform_rank if uniform else check_rank
    for bound in range(1, max_bound + 1):
        if check(e, alphabet, bound, max_len).holds:
            return bound
    return None
