"""Seeded random regexps, independence relations and word grids for agreement sweeps"""

import random
from itertools import combinations, product
from typing import Iterator, List, Sequence, Tuple

from tracederiv.syntax import (
    ONE,
    ZERO,
    Cat,
    Char,
    IndependenceAlphabet,
    Regexp,
    Star,
    Sum,
)
from tracederiv.typing import Letter, Word


def random_alphabet(
    rng: random.Random, letters: Sequence[Letter], p_independent: float = 0.5
) -> IndependenceAlphabet:
    pairs = [pair for pair in combinations(letters, 2) if rng.random() < p_independent]
    return IndependenceAlphabet.from_letters(letters, pairs)


def random_regexp(rng: random.Random, letters: Sequence[Letter], size: int) -> Regexp:
    """Random regexp with exactly `size` nodes"""
    if size <= 1:
        roll = rng.random()
        if roll < 0.1:
            return ZERO
        if roll < 0.2:
            return ONE
        return Char(rng.choice(letters))
    if size == 2:
        return Star(random_regexp(rng, letters, 1))
    operator = rng.choice(("sum", "cat", "cat", "star"))
    if operator == "star":
        return Star(random_regexp(rng, letters, size - 1))
    left_size = rng.randint(1, size - 2)
    left = random_regexp(rng, letters, left_size)
    right = random_regexp(rng, letters, size - 1 - left_size)
    return Sum(left, right) if operator == "sum" else Cat(left, right)


def regexp_corpus(
    count: int,
    max_size: int = 8,
    letters: Sequence[Letter] = ("a", "b", "c"),
    seed: int = 0,
) -> List[Tuple[Regexp, IndependenceAlphabet]]:
    """Pairs of random regexps and random independence alphabets over 2 or more of the letters"""
    rng = random.Random(seed)
    corpus = []
    for _ in range(count):
        used = tuple(letters[: rng.randint(min(2, len(letters)), len(letters))])
        alphabet = random_alphabet(rng, used)
        corpus.append((random_regexp(rng, used, rng.randint(1, max_size)), alphabet))
    return corpus


def words_up_to(letters: Sequence[Letter], max_len: int) -> Iterator[Word]:
    """All words over the letters up to max_len, shortest first"""
    for length in range(max_len + 1):
        yield from product(letters, repeat=length)
