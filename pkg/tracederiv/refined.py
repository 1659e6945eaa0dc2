"""Refined reordering derivatives.

A step on letter a splits one regexp E of a state list into a pair
(E_l, E_r) around the consumed a, where E_l only describes words
independent of a. State lists [E_0, ..., E_n] describe the gaps v_0..v_n
left around the scattered blocks of the consumed prefix.

Grouping convention shared by the split rules and the closure sets:
the star rule builds Cat(Star(R_a E), E_l) and Cat(E_r, E*), the product
rules build Cat(E_r, F) and Cat(R_a E, F_l).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import chain, combinations
from typing import FrozenSet, Iterator, NamedTuple, Optional, Set, Tuple

from tracederiv.errormanager import StateListError
from tracederiv.reordering import reorderable_part, reorderable_part_letter
from tracederiv.syntax import (
    ONE,
    Cat,
    Char,
    IndependenceAlphabet,
    One,
    Regexp,
    Star,
    Sum,
    Zero,
    is_empty,
    nullable,
    render_regexp,
)
from tracederiv.typing import Letter, Word

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitPair:
    left: Regexp
    right: Regexp

    @property
    def sort_key(self):
        return (self.left.sort_key, self.right.sort_key)

    def render(self) -> str:
        return f"({render_regexp(self.left)}, {render_regexp(self.right)})"


@dataclass(frozen=True)
class StateList:
    """Nonempty list of regexps, a state of the refined automaton"""

    items: Tuple[Regexp, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if not self.items:
            raise StateListError("A state list must contain at least one regexp")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Regexp]:
        return iter(self.items)

    def __getitem__(self, index):
        return self.items[index]

    @property
    def sort_key(self):
        return (len(self.items), tuple(item.sort_key for item in self.items))

    @property
    def depth(self) -> int:
        return max(item.depth for item in self.items)

    @property
    def accepting(self) -> bool:
        """Singleton initial lists accept via nullability, otherwise two nullable components are needed"""
        if len(self.items) == 1:
            return nullable(self.items[0])
        return len(self.items) == 2 and all(map(nullable, self.items))

    @property
    def dead(self) -> bool:
        """A component with empty language never disappears, so the list cannot accept"""
        return any(map(is_empty, self.items))

    def render(self) -> str:
        return "[" + ", ".join(render_regexp(item) for item in self.items) + "]"

    def __str__(self):
        return self.render()


@lru_cache(maxsize=2**16)
def refined_split_step(
    e: Regexp, a: Letter, alphabet: IndependenceAlphabet
) -> FrozenSet[SplitPair]:
    if isinstance(e, Char):
        return frozenset((SplitPair(ONE, ONE),)) if e.symbol == a else frozenset()
    if isinstance(e, (Zero, One)):
        return frozenset()
    if isinstance(e, Sum):
        return refined_split_step(e.left, a, alphabet) | refined_split_step(
            e.right, a, alphabet
        )
    if isinstance(e, Cat):
        pairs = {
            SplitPair(pair.left, Cat(pair.right, e.right))
            for pair in refined_split_step(e.left, a, alphabet)
        }
        right_pairs = refined_split_step(e.right, a, alphabet)
        if right_pairs:
            prefix = reorderable_part_letter(e.left, a, alphabet)
            pairs.update(
                SplitPair(Cat(prefix, pair.left), pair.right) for pair in right_pairs
            )
        return frozenset(pairs)
    body_pairs = refined_split_step(e.body, a, alphabet)
    if not body_pairs:
        return frozenset()
    prefix = Star(reorderable_part_letter(e.body, a, alphabet))
    return frozenset(
        SplitPair(Cat(prefix, pair.left), Cat(pair.right, e)) for pair in body_pairs
    )


def list_step(
    g: StateList,
    a: Letter,
    alphabet: IndependenceAlphabet,
    bound: Optional[int] = None,
) -> FrozenSet[StateList]:
    """All lists reachable from g in one step on a.

    For each position, with prefix Γ and suffix Δ around the split regexp:
    (1) insert E_l, E_r (bounded: only if |Γ|+|Δ| < bound),
    (2) drop a nullable E_l if Γ is nonempty,
    (3) drop a nullable E_r if Δ is nonempty,
    (4) drop both if both are nullable and Γ, Δ are nonempty.
    R_a is applied to Γ only.
    """
    if bound is not None and len(g) > bound + 1:
        raise StateListError(
            f"State list of length {len(g)} exceeds the bound {bound} + 1"
        )
    results: Set[StateList] = set()
    for k, item in enumerate(g.items):
        pairs = refined_split_step(item, a, alphabet)
        if not pairs:
            continue
        gamma = tuple(reorderable_part_letter(x, a, alphabet) for x in g.items[:k])
        delta = g.items[k + 1 :]
        for pair in pairs:
            left_nullable, right_nullable = nullable(pair.left), nullable(pair.right)
            if bound is None or len(gamma) + len(delta) < bound:
                results.add(StateList(gamma + (pair.left, pair.right) + delta))
            if left_nullable and gamma:
                results.add(StateList(gamma + (pair.right,) + delta))
            if right_nullable and delta:
                results.add(StateList(gamma + (pair.left,) + delta))
            if left_nullable and right_nullable and gamma and delta:
                results.add(StateList(gamma + delta))
    return frozenset(results)


def refined_derive(
    e: Regexp,
    u: Word,
    alphabet: IndependenceAlphabet,
    bound: Optional[int] = None,
) -> FrozenSet[StateList]:
    """All state lists reachable from [e] along u"""
    frontier = frozenset((StateList((e,)),))
    for a in u:
        frontier = frozenset(
            successor for g in frontier for successor in list_step(g, a, alphabet, bound)
        )
        log.debug(f"{len(frontier)} state lists after consuming {a!r}")
    return frontier


def refined_membership(
    e: Regexp,
    u: Word,
    alphabet: IndependenceAlphabet,
    bound: Optional[int] = None,
) -> bool:
    if not u:
        return nullable(e)
    frontier = frozenset((StateList((e,)),))
    for consumed, a in enumerate(u, start=1):
        remaining = len(u) - consumed
        frontier = frozenset(
            successor
            for g in frontier
            for successor in list_step(g, a, alphabet, bound)
            if not successor.dead and len(successor) - 2 <= remaining
        )
        if not frontier:
            return False
    return any(len(g) == 2 and g.accepting for g in frontier)


class ClosureSets(NamedTuple):
    squiggle_plus: FrozenSet[Regexp]
    to_star: FrozenSet[Regexp]


@lru_cache(maxsize=2**12)
def _squiggle_plus(e: Regexp) -> FrozenSet[Regexp]:
    if isinstance(e, Char):
        return frozenset((ONE,))
    if isinstance(e, (Zero, One)):
        return frozenset()
    if isinstance(e, Sum):
        return _squiggle_plus(e.left) | _squiggle_plus(e.right)
    if isinstance(e, Cat):
        left, right = _squiggle_plus(e.left), _squiggle_plus(e.right)
        return frozenset(
            chain(
                left,
                right,
                (Cat(x, e.right) for x in left),
                (Cat(e.left, y) for y in right),
                (Cat(x, y) for x in left for y in right),
            )
        )
    body = _squiggle_plus(e.body)
    return frozenset(
        chain(
            body,
            (Cat(e, x) for x in body),
            (Cat(x, e) for x in body),
            (Cat(x, Cat(e, y)) for x in body for y in body),
            (Cat(Cat(x, e), y) for x in body for y in body),
        )
    )


def _letter_subsets(letters: Tuple[Letter, ...]):
    return chain.from_iterable(
        combinations(letters, size) for size in range(len(letters) + 1)
    )


def refined_closure_sets(e: Regexp, alphabet: IndependenceAlphabet) -> ClosureSets:
    """Finite sets bounding the components of every reachable state list"""
    squiggle = _squiggle_plus(e)
    images = {
        reorderable_part(x, subset, alphabet)
        for subset in _letter_subsets(alphabet.sigma)
        for x in squiggle
    }
    return ClosureSets(squiggle, frozenset(images | {e}))
