"""Classical Brzozowski derivatives and Antimirov parts-of-derivatives"""

from functools import lru_cache, reduce
from typing import FrozenSet

from tracederiv.syntax import (
    ONE,
    ZERO,
    Cat,
    Char,
    One,
    Regexp,
    Star,
    Sum,
    Zero,
    nullable,
)
from tracederiv.typing import Letter, Word


@lru_cache(maxsize=2**16)
def brzozowski_step(e: Regexp, a: Letter) -> Regexp:
    if isinstance(e, Char):
        return ONE if e.symbol == a else ZERO
    if isinstance(e, (Zero, One)):
        return ZERO
    if isinstance(e, Sum):
        return Sum(brzozowski_step(e.left, a), brzozowski_step(e.right, a))
    if isinstance(e, Cat):
        left = Cat(brzozowski_step(e.left, a), e.right)
        if nullable(e.left):
            return Sum(left, brzozowski_step(e.right, a))
        return left
    return Cat(brzozowski_step(e.body, a), e)


def brzozowski_derive(e: Regexp, u: Word) -> Regexp:
    return reduce(brzozowski_step, u, e)


@lru_cache(maxsize=2**16)
def antimirov_step(e: Regexp, a: Letter) -> FrozenSet[Regexp]:
    if isinstance(e, Char):
        return frozenset((ONE,)) if e.symbol == a else frozenset()
    if isinstance(e, (Zero, One)):
        return frozenset()
    if isinstance(e, Sum):
        return antimirov_step(e.left, a) | antimirov_step(e.right, a)
    if isinstance(e, Cat):
        parts = frozenset(Cat(part, e.right) for part in antimirov_step(e.left, a))
        if nullable(e.left):
            parts |= antimirov_step(e.right, a)
        return parts
    return frozenset(Cat(part, e) for part in antimirov_step(e.body, a))


def antimirov_parts(e: Regexp, u: Word) -> FrozenSet[Regexp]:
    """All E' with e ->* (u, E')"""
    parts = frozenset((e,))
    for a in u:
        parts = frozenset(
            successor for part in parts for successor in antimirov_step(part, a)
        )
    return parts


@lru_cache(maxsize=2**12)
def _proper_parts(e: Regexp) -> FrozenSet[Regexp]:
    if isinstance(e, Char):
        return frozenset((ONE,))
    if isinstance(e, (Zero, One)):
        return frozenset()
    if isinstance(e, Sum):
        return _proper_parts(e.left) | _proper_parts(e.right)
    if isinstance(e, Cat):
        return (
            frozenset(Cat(part, e.right) for part in _proper_parts(e.left))
            | _proper_parts(e.right)
        )
    return frozenset(Cat(part, e) for part in _proper_parts(e.body))


def classical_closure_set(e: Regexp) -> FrozenSet[Regexp]:
    """The finite set containing every regexp reachable by classical Antimirov steps from e"""
    return frozenset((e,)) | _proper_parts(e)
