"""Equational normal forms used to identify automaton states.

T0: + is associative, commutative and idempotent with unit 0; 0 annihilates
concatenation, 1 is its unit and concatenation is associative.
T1 additionally merges F*F* into F* and rewrites 0* and 1* to 1.

Normal forms are rebuilt left-associated, the way the parser associates, so a
normal form renders without inner parentheses and re-parses to itself.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache, reduce
from typing import Iterable, List, Optional, Union

from tracederiv.errormanager import EngineError
from tracederiv.syntax import ONE, ZERO, Cat, Char, One, Regexp, Star, Sum, Zero


class TheoryTier(str, Enum):
    T0 = "t0"
    T1 = "t1"

    @classmethod
    def parse(cls, name: Union[str, TheoryTier, None]) -> Optional[TheoryTier]:
        """Tier from a name; None, '' and 'none' mean structural identity"""
        if name is None or isinstance(name, TheoryTier):
            return name
        name = name.strip().lower()
        if name in ("", "none"):
            return None
        try:
            return cls(name)
        except ValueError:
            raise EngineError(
                f"Unknown normalization tier {name!r}, expected none, t0 or t1"
            ) from None


def _summands(e: Regexp) -> List[Regexp]:
    if isinstance(e, Sum):
        return _summands(e.left) + _summands(e.right)
    return [e]


def _factors(e: Regexp) -> List[Regexp]:
    if isinstance(e, Cat):
        return _factors(e.left) + _factors(e.right)
    return [e]


def build_sum(summands: Iterable[Regexp]) -> Regexp:
    summands = list(summands)
    if not summands:
        return ZERO
    return reduce(Sum, summands)


def build_cat(factors: Iterable[Regexp]) -> Regexp:
    factors = list(factors)
    if not factors:
        return ONE
    return reduce(Cat, factors)


@lru_cache(maxsize=2**16)
def _normalize(e: Regexp, tier: TheoryTier) -> Regexp:
    if isinstance(e, (Char, Zero, One)):
        return e

    if isinstance(e, Star):
        body = _normalize(e.body, tier)
        if tier is TheoryTier.T1 and isinstance(body, (Zero, One)):
            return ONE
        return e if body is e.body else Star(body)

    left, right = _normalize(e.left, tier), _normalize(e.right, tier)

    if isinstance(e, Sum):
        summands = {s for s in _summands(left) + _summands(right) if s != ZERO}
        return build_sum(sorted(summands, key=lambda s: s.sort_key))

    factors = _factors(left) + _factors(right)
    if ZERO in factors:
        return ZERO
    merged: List[Regexp] = []
    for factor in factors:
        if factor == ONE:
            continue
        if (
            tier is TheoryTier.T1
            and merged
            and isinstance(factor, Star)
            and factor == merged[-1]
        ):
            continue
        merged.append(factor)
    return build_cat(merged)


def normalize(e: Regexp, tier: Union[TheoryTier, str] = TheoryTier.T0) -> Regexp:
    tier = TheoryTier.parse(tier)
    if tier is None:
        return e
    return _normalize(e, tier)


def equal_mod(
    e: Regexp, f: Regexp, tier: Union[TheoryTier, str] = TheoryTier.T0
) -> bool:
    return normalize(e, tier) == normalize(f, tier)
