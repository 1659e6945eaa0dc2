"""Brute-force trace semantics used as ground truth for the derivative engines.

Everything here works on explicit words and bounded languages. Trace
equivalence is decided by letter counts plus projections onto dependent
letter pairs.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from tracederiv.classical import antimirov_step
from tracederiv.errormanager import LengthCapError
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
)
from tracederiv.typing import Letter, Word

log = logging.getLogger(__name__)

DEFAULT_CAP = 12
DEFAULT_ORACLE_LENGTH = 6


def check_cap(max_len: int, cap: int = DEFAULT_CAP) -> None:
    if max_len > cap:
        raise LengthCapError(max_len, cap)


# Trace equivalence


@dataclass(frozen=True)
class TraceKey:
    """Canonical key of the trace [w]: letter counts and dependent-pair projections"""

    counts: Tuple[Tuple[Letter, int], ...]
    pair_projections: Tuple[Tuple[Tuple[Letter, Letter], Word], ...]


def _projection(word: Word, pair: Tuple[Letter, Letter]) -> Word:
    return tuple(letter for letter in word if letter in pair)


def trace_key(w: Word, alphabet: IndependenceAlphabet) -> TraceKey:
    letters = sorted(set(w))
    projections = tuple(
        (pair, _projection(w, pair))
        for pair in combinations(letters, 2)
        if alphabet.dependent(*pair)
    )
    return TraceKey(tuple(sorted(Counter(w).items())), projections)


def trace_equiv(u: Word, v: Word, alphabet: IndependenceAlphabet) -> bool:
    if len(u) != len(v):
        return False
    return trace_key(u, alphabet) == trace_key(v, alphabet)


def trace_class(w: Word, alphabet: IndependenceAlphabet) -> FrozenSet[Word]:
    """All words equivalent to w, by swapping adjacent independent letters"""
    w = tuple(w)
    seen = {w}
    queue = deque([w])
    while queue:
        word = queue.popleft()
        for i in range(len(word) - 1):
            if alphabet.independent(word[i], word[i + 1]):
                swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2 :]
                if swapped not in seen:
                    seen.add(swapped)
                    queue.append(swapped)
    return frozenset(seen)


# Bounded languages


def enumerate_language(
    e: Regexp, max_len: int, cap: int = DEFAULT_CAP
) -> FrozenSet[Word]:
    """All words of the language of e up to length max_len"""
    check_cap(max_len, cap)
    letters = sorted(letters_of(e))
    words: Set[Word] = set()
    frontier: Dict[Regexp, Set[Word]] = {} if is_empty(e) else {e: {()}}
    for length in range(max_len + 1):
        for state, prefixes in frontier.items():
            if nullable(state):
                words.update(prefixes)
        if length == max_len:
            break
        next_frontier: Dict[Regexp, Set[Word]] = {}
        for state, prefixes in frontier.items():
            for a in letters:
                for successor in antimirov_step(state, a):
                    if is_empty(successor):
                        continue
                    next_frontier.setdefault(successor, set()).update(
                        prefix + (a,) for prefix in prefixes
                    )
        frontier = next_frontier
    return frozenset(words)


def closure_language(
    e: Regexp, max_len: int, alphabet: IndependenceAlphabet, cap: int = DEFAULT_CAP
) -> FrozenSet[Word]:
    """All words of the trace closure of the language of e up to length max_len"""
    words: Set[Word] = set()
    for z in enumerate_language(e, max_len, cap):
        if z not in words:
            words |= trace_class(z, alphabet)
    return frozenset(words)


class _TraceGuidedSearch:
    """Walk the classical Antimirov automaton of e, extending only prefixes
    that are trace prefixes of the target word w."""

    def __init__(self, e: Regexp, w: Word, alphabet: IndependenceAlphabet):
        self.e = e
        self.w = tuple(w)
        self.alphabet = alphabet
        self.letters = sorted(set(self.w), key=alphabet.position)
        self.target = tuple(self.w.count(a) for a in self.letters)
        self.projections = {
            (a, b): _projection(self.w, (a, b))
            for a in self.letters
            for b in self.letters
            if a != b and alphabet.dependent(a, b)
        }
        self._completions = lru_cache(maxsize=None)(self._completions_uncached)
        self._exists = lru_cache(maxsize=None)(self._exists_uncached)

    def _allowed(self, counts: Tuple[int, ...]):
        """Indices of letters that can extend a prefix with these counts"""
        for i, a in enumerate(self.letters):
            if counts[i] >= self.target[i]:
                continue
            if all(
                self.projections[(a, b)][counts[i] + counts[j]] == a
                for j, b in enumerate(self.letters)
                if (a, b) in self.projections
            ):
                yield i

    def _successors(self, state: Regexp, counts: Tuple[int, ...]):
        for i in self._allowed(counts):
            a = self.letters[i]
            advanced = counts[:i] + (counts[i] + 1,) + counts[i + 1 :]
            for successor in antimirov_step(state, a):
                if not is_empty(successor):
                    yield a, successor, advanced

    def _completions_uncached(
        self, state: Regexp, counts: Tuple[int, ...]
    ) -> FrozenSet[Word]:
        if counts == self.target:
            return frozenset(((),)) if nullable(state) else frozenset()
        found = set()
        for a, successor, advanced in self._successors(state, counts):
            found.update((a,) + rest for rest in self._completions(successor, advanced))
        return frozenset(found)

    def _exists_uncached(self, state: Regexp, counts: Tuple[int, ...]) -> bool:
        if counts == self.target:
            return nullable(state)
        return any(
            self._exists(successor, advanced)
            for _, successor, advanced in self._successors(state, counts)
        )

    def start(self):
        return self.e, tuple(0 for _ in self.letters)

    def members(self) -> List[Word]:
        return sorted(self._completions(*self.start()), key=self.alphabet.word_sort_key)

    def exists(self) -> bool:
        return self._exists(*self.start())


def equivalent_members(
    e: Regexp, w: Word, alphabet: IndependenceAlphabet
) -> List[Word]:
    """All z in the language of e with z equivalent to w, in shortlex order"""
    return _TraceGuidedSearch(e, w, alphabet).members()


def closure_member_oracle(e: Regexp, w: Word, alphabet: IndependenceAlphabet) -> bool:
    """True iff w belongs to the trace closure of the language of e"""
    return _TraceGuidedSearch(e, w, alphabet).exists()


# Reordering concatenation


@lru_cache(maxsize=2**16)
def reorder_concat(
    u: Word, v: Word, alphabet: IndependenceAlphabet
) -> FrozenSet[Word]:
    """u ·^I v: interleavings of u and v where v-letters only move left across independent u-letters"""
    u, v = tuple(u), tuple(v)
    if not u:
        return frozenset((v,))
    if not v:
        return frozenset((u,))
    result = {(u[0],) + rest for rest in reorder_concat(u[1:], v, alphabet)}
    if alphabet.independent_of(v[0], u):
        result.update((v[0],) + rest for rest in reorder_concat(u, v[1:], alphabet))
    return frozenset(result)


def reorder_concat_languages(
    first: Iterable[Word],
    second: Iterable[Word],
    alphabet: IndependenceAlphabet,
    max_len: Optional[int] = None,
) -> FrozenSet[Word]:
    second = tuple(second)
    result = set()
    for u in first:
        for v in second:
            if max_len is None or len(u) + len(v) <= max_len:
                result |= reorder_concat(u, v, alphabet)
    return frozenset(result)


def closing_semantics(
    e: Regexp, max_len: int, alphabet: IndependenceAlphabet, cap: int = DEFAULT_CAP
) -> FrozenSet[Word]:
    """Compositional trace-closing semantics of e, restricted to words up to max_len.

    Concatenation is reordering concatenation; the star is the least fixpoint
    of X = {ε} ∪ L ·^I X. Equals closure_language for every e."""
    check_cap(max_len, cap)
    return _closing(e, max_len, alphabet)


def _closing(
    e: Regexp, max_len: int, alphabet: IndependenceAlphabet
) -> FrozenSet[Word]:
    if isinstance(e, Char):
        return frozenset(((e.symbol,),)) if max_len >= 1 else frozenset()
    if isinstance(e, Zero):
        return frozenset()
    if isinstance(e, One):
        return frozenset(((),))
    if isinstance(e, Sum):
        return _closing(e.left, max_len, alphabet) | _closing(e.right, max_len, alphabet)
    if isinstance(e, Cat):
        return reorder_concat_languages(
            _closing(e.left, max_len, alphabet),
            _closing(e.right, max_len, alphabet),
            alphabet,
            max_len,
        )
    body = _closing(e.body, max_len, alphabet)
    result = frozenset(((),))
    while True:
        extended = result | reorder_concat_languages(body, result, alphabet, max_len)
        if extended == result:
            return result
        result = extended


# Scattering


class ScatterMode(str, Enum):
    STRICT = "strict"
    PREFIX_EQUIV = "prefix-equiv"
    BOTH_EQUIV = "both-equiv"


@dataclass(frozen=True)
class ScatterWitness:
    """z = v0 u1 v1 ... un vn, with every v_j independent of every later u_i"""

    u_blocks: Tuple[Word, ...]
    v_blocks: Tuple[Word, ...]

    @property
    def degree(self) -> int:
        return len(self.u_blocks)

    @property
    def prefix(self) -> Word:
        return tuple(letter for block in self.u_blocks for letter in block)

    @property
    def suffix(self) -> Word:
        return tuple(letter for block in self.v_blocks for letter in block)

    @property
    def scattered(self) -> Word:
        word = self.v_blocks[0]
        for u_block, v_block in zip(self.u_blocks, self.v_blocks[1:]):
            word = word + u_block + v_block
        return word


def scatter_check(
    u: Word,
    z: Word,
    alphabet: IndependenceAlphabet,
    mode: ScatterMode = ScatterMode.STRICT,
    max_degree: Optional[int] = None,
    suffix: Optional[Word] = None,
) -> Optional[ScatterWitness]:
    """Find the scattering of u in z, or None.

    The positions of z carrying u are forced: a letter left in a v-block may
    not precede an equal letter taken into u, so u takes the first |u|_a
    occurrences of each letter a. The witness is therefore unique, and its
    degree is minimal. In STRICT mode the u-blocks must spell u; otherwise a
    word equivalent to u. In BOTH_EQUIV mode a given suffix must be
    equivalent to the concatenated v-blocks.
    """
    u, z = tuple(u), tuple(z)
    mode = ScatterMode(mode)
    needed = Counter(u)
    taken_counts: Counter = Counter()
    taken = []
    for letter in z:
        take = taken_counts[letter] < needed[letter]
        taken.append(take)
        if take:
            taken_counts[letter] += 1
    if any(taken_counts[letter] != count for letter, count in needed.items()):
        return None

    u_prime = tuple(letter for letter, take in zip(z, taken) if take)
    if mode is ScatterMode.STRICT:
        if u_prime != u:
            return None
    elif not trace_equiv(u_prime, u, alphabet):
        return None

    skipped: Set[Letter] = set()
    for letter, take in zip(z, taken):
        if not take:
            skipped.add(letter)
        elif not alphabet.independent_of(letter, skipped):
            return None

    u_blocks: List[List[Letter]] = []
    v_blocks: List[List[Letter]] = [[]]
    previous_taken = False
    for letter, take in zip(z, taken):
        if take:
            if not previous_taken:
                u_blocks.append([])
            u_blocks[-1].append(letter)
        else:
            if previous_taken:
                v_blocks.append([])
            v_blocks[-1].append(letter)
        previous_taken = take
    if previous_taken:
        v_blocks.append([])

    witness = ScatterWitness(
        tuple(map(tuple, u_blocks)), tuple(map(tuple, v_blocks))
    )
    if max_degree is not None and witness.degree > max_degree:
        return None
    if (
        mode is ScatterMode.BOTH_EQUIV
        and suffix is not None
        and not trace_equiv(witness.suffix, tuple(suffix), alphabet)
    ):
        return None
    return witness


# Connectedness


def dependence_graph(letters: Iterable[Letter], alphabet: IndependenceAlphabet) -> nx.Graph:
    """Graph on the given letters with an edge for every dependent pair of distinct letters"""
    graph = nx.Graph()
    letters = sorted(set(letters))
    graph.add_nodes_from(letters)
    graph.add_edges_from(
        (a, b) for a, b in combinations(letters, 2) if alphabet.dependent(a, b)
    )
    return graph


def letters_connected(letters: Iterable[Letter], alphabet: IndependenceAlphabet) -> bool:
    graph = dependence_graph(letters, alphabet)
    if graph.number_of_nodes() <= 1:
        return True
    return nx.is_connected(graph)


def word_connected(w: Word, alphabet: IndependenceAlphabet) -> bool:
    return letters_connected(w, alphabet)


# Semantic derivatives of finite languages


def semantic_reorder_derivative(
    language: Iterable[Word], u: Word, alphabet: IndependenceAlphabet
) -> FrozenSet[Word]:
    result = set()
    for z in language:
        witness = scatter_check(u, z, alphabet, ScatterMode.PREFIX_EQUIV)
        if witness is not None:
            result.add(witness.suffix)
    return frozenset(result)


def semantic_reorderable_part(
    language: Iterable[Word], u: Word, alphabet: IndependenceAlphabet
) -> FrozenSet[Word]:
    u_letters = set(u)
    return frozenset(
        v
        for v in language
        if all(alphabet.independent_of(letter, u_letters) for letter in v)
    )
