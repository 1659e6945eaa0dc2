"""Reordering derivatives: letters of the input may be consumed out of order
as long as they only cross independent letters.

R^I_X e replaces every letter dependent on some letter of X by 0. The
Brzozowski-style derivative is deterministic; the Antimirov-style one
returns the set of parts.
"""

from functools import lru_cache
from typing import FrozenSet, Iterable

from tracederiv.syntax import (
    ONE,
    ZERO,
    Cat,
    Char,
    IndependenceAlphabet,
    One,
    Regexp,
    Star,
    Sum,
    Zero,
)
from tracederiv.typing import Letter, Word


def blocked_letters(
    letters: Iterable[Letter], alphabet: IndependenceAlphabet
) -> FrozenSet[Letter]:
    """Letters of the alphabet that are dependent on at least one of the given letters"""
    letters = tuple(letters)
    return frozenset(
        b for b in alphabet.sigma if any(alphabet.dependent(b, x) for x in letters)
    ) | frozenset(letters)


@lru_cache(maxsize=2**16)
def _replace_blocked(e: Regexp, blocked: FrozenSet[Letter]) -> Regexp:
    if isinstance(e, Char):
        return ZERO if e.symbol in blocked else e
    if isinstance(e, (Zero, One)):
        return e
    if isinstance(e, Star):
        body = _replace_blocked(e.body, blocked)
        return e if body is e.body else Star(body)
    left = _replace_blocked(e.left, blocked)
    right = _replace_blocked(e.right, blocked)
    if left is e.left and right is e.right:
        return e
    return type(e)(left, right)


def reorderable_part(
    e: Regexp, letters: Iterable[Letter], alphabet: IndependenceAlphabet
) -> Regexp:
    """R^I_X e for the letter set X"""
    blocked = blocked_letters(letters, alphabet)
    if not blocked:
        return e
    return _replace_blocked(e, blocked)


def reorderable_part_letter(
    e: Regexp, a: Letter, alphabet: IndependenceAlphabet
) -> Regexp:
    return reorderable_part(e, (a,), alphabet)


@lru_cache(maxsize=2**16)
def brz_reorder_step(e: Regexp, a: Letter, alphabet: IndependenceAlphabet) -> Regexp:
    if isinstance(e, Char):
        return ONE if e.symbol == a else ZERO
    if isinstance(e, (Zero, One)):
        return ZERO
    if isinstance(e, Sum):
        return Sum(
            brz_reorder_step(e.left, a, alphabet), brz_reorder_step(e.right, a, alphabet)
        )
    if isinstance(e, Cat):
        return Sum(
            Cat(brz_reorder_step(e.left, a, alphabet), e.right),
            Cat(
                reorderable_part_letter(e.left, a, alphabet),
                brz_reorder_step(e.right, a, alphabet),
            ),
        )
    return Cat(
        Cat(
            Star(reorderable_part_letter(e.body, a, alphabet)),
            brz_reorder_step(e.body, a, alphabet),
        ),
        e,
    )


def brz_reorder_derive(e: Regexp, u: Word, alphabet: IndependenceAlphabet) -> Regexp:
    for a in u:
        e = brz_reorder_step(e, a, alphabet)
    return e


@lru_cache(maxsize=2**16)
def antimirov_reorder_step(
    e: Regexp, a: Letter, alphabet: IndependenceAlphabet
) -> FrozenSet[Regexp]:
    if isinstance(e, Char):
        return frozenset((ONE,)) if e.symbol == a else frozenset()
    if isinstance(e, (Zero, One)):
        return frozenset()
    if isinstance(e, Sum):
        return antimirov_reorder_step(e.left, a, alphabet) | antimirov_reorder_step(
            e.right, a, alphabet
        )
    if isinstance(e, Cat):
        left_parts = antimirov_reorder_step(e.left, a, alphabet)
        right_parts = antimirov_reorder_step(e.right, a, alphabet)
        parts = frozenset(Cat(part, e.right) for part in left_parts)
        if right_parts:
            prefix = reorderable_part_letter(e.left, a, alphabet)
            parts |= frozenset(Cat(prefix, part) for part in right_parts)
        return parts
    body_parts = antimirov_reorder_step(e.body, a, alphabet)
    if not body_parts:
        return frozenset()
    prefix = Star(reorderable_part_letter(e.body, a, alphabet))
    return frozenset(Cat(Cat(prefix, part), e) for part in body_parts)


def antimirov_reorder_parts(
    e: Regexp, u: Word, alphabet: IndependenceAlphabet
) -> FrozenSet[Regexp]:
    """All E' reachable from e by reordering Antimirov steps along u"""
    parts = frozenset((e,))
    for a in u:
        parts = frozenset(
            successor
            for part in parts
            for successor in antimirov_reorder_step(part, a, alphabet)
        )
    return parts
