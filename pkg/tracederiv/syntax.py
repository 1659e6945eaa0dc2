"""Regular expressions over independence alphabets.

The syntax tree is immutable and hashable so regexps can be used directly as
automaton states. Regexps compare by a total canonical key, which keeps every
set-valued result iterable in a deterministic order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from tracederiv.errormanager import (
    AlphabetError,
    RegexpSyntaxError,
    UnknownLetterError,
)
from tracederiv.io_utilities import load_dict
from tracederiv.typing import Letter, Word

log = logging.getLogger(__name__)

RESERVED = set("+*()'01#;,:ε")


@dataclass(frozen=True)
class IndependenceAlphabet:
    """Finite ordered alphabet with an irreflexive, symmetric independence relation

    Parameters
    ----------
    sigma : tuple of str
        The letters, in declaration order.
    indep : frozenset of frozenset
        Unordered pairs of distinct independent letters. Any pair not listed is dependent.
    """

    sigma: Tuple[Letter, ...]
    indep: FrozenSet[FrozenSet[Letter]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        pairs = frozenset(frozenset(pair) for pair in self.indep)
        object.__setattr__(self, "indep", pairs)

        if len(set(self.sigma)) != len(self.sigma):
            raise AlphabetError(f"Duplicate letters in {self.sigma}")
        for letter in self.sigma:
            if not letter or any(ch.isspace() for ch in letter):
                raise AlphabetError(f"Invalid letter {letter!r}")
        for pair in pairs:
            if len(pair) != 2:
                raise AlphabetError(
                    f"Independence must be irreflexive, got {sorted(pair)}"
                )
            undeclared = pair.difference(self.sigma)
            if undeclared:
                raise AlphabetError(
                    f"Independence pair uses undeclared letters {sorted(undeclared)}"
                )

    @classmethod
    def from_letters(
        cls, letters: Iterable[Letter], indep: Iterable[Iterable[Letter]] = ()
    ) -> IndependenceAlphabet:
        return cls(tuple(letters), frozenset(frozenset(pair) for pair in indep))

    @classmethod
    def commutative(cls, letters: Iterable[Letter]) -> IndependenceAlphabet:
        """Alphabet where every pair of distinct letters is independent"""
        letters = tuple(letters)
        return cls(letters, frozenset(map(frozenset, combinations(letters, 2))))

    def independent(self, a: Letter, b: Letter) -> bool:
        return frozenset((a, b)) in self.indep

    def dependent(self, a: Letter, b: Letter) -> bool:
        return not self.independent(a, b)

    def independent_of(self, a: Letter, letters: Iterable[Letter]) -> bool:
        """True if a is independent of every letter in letters (vacuously for none)"""
        return all(self.independent(a, b) for b in letters)

    def dependent_pairs(self) -> List[Tuple[Letter, Letter]]:
        """Pairs of distinct dependent letters, in declaration order"""
        return [
            (a, b) for a, b in combinations(self.sigma, 2) if self.dependent(a, b)
        ]

    def position(self, letter: Letter) -> int:
        return self._positions.get(letter, len(self.sigma))

    @cached_property
    def _positions(self):
        return {letter: i for i, letter in enumerate(self.sigma)}

    def word_sort_key(self, word: Word):
        """Shortlex key for words: length first, then letter declaration order"""
        return (len(word), tuple(self.position(letter) for letter in word))

    def render(self) -> str:
        pairs = sorted(
            (tuple(sorted(pair, key=self.position)) for pair in self.indep),
            key=lambda pair: (self.position(pair[0]), self.position(pair[1])),
        )
        indep = ", ".join(f"{a} {b}" for a, b in pairs)
        return f"letters: {' '.join(self.sigma)}\nindep: {indep}"


class Regexp:
    """Base class of the regexp syntax tree

    Subclasses are frozen dataclasses. Equality and hashing go through a cached
    structural identity, so deep terms stay cheap to compare and store in sets."""

    precedence = 4
    _tag = -1
    # height of the tree, set eagerly on construction so it never recurses
    depth = 1

    def _fields(self) -> tuple:
        raise NotImplementedError

    @cached_property
    def _identity(self) -> tuple:
        return (self._tag,) + self._fields()

    @cached_property
    def _hash(self) -> int:
        return hash(self._identity)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Regexp):
            return NotImplemented
        return self._hash == other._hash and self._identity == other._identity

    def __hash__(self):
        return self._hash

    @cached_property
    def sort_key(self) -> tuple:
        return (self._flat_key, self._structure_key)

    def __lt__(self, other: Regexp) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self):
        return render_regexp(self)


@dataclass(frozen=True, eq=False)
class Char(Regexp):
    symbol: Letter
    _tag = 0

    def _fields(self):
        return (self.symbol,)

    @cached_property
    def _flat_key(self):
        return ((0, self.symbol),)

    @cached_property
    def _structure_key(self):
        return (0, self.symbol)


@dataclass(frozen=True, eq=False)
class One(Regexp):
    _tag = 1

    def _fields(self):
        return ()

    _flat_key = ((1, ""),)
    _structure_key = (1,)


@dataclass(frozen=True, eq=False)
class Zero(Regexp):
    _tag = 2

    def _fields(self):
        return ()

    _flat_key = ((2, ""),)
    _structure_key = (2,)


@dataclass(frozen=True, eq=False)
class Cat(Regexp):
    left: Regexp
    right: Regexp
    precedence = 2
    _tag = 3

    def __post_init__(self):
        object.__setattr__(self, "depth", 1 + max(self.left.depth, self.right.depth))

    def _fields(self):
        return (self.left, self.right)

    @cached_property
    def _flat_key(self):
        return self.left._flat_key + self.right._flat_key

    @cached_property
    def _structure_key(self):
        return (3, self.left._structure_key, self.right._structure_key)


@dataclass(frozen=True, eq=False)
class Sum(Regexp):
    left: Regexp
    right: Regexp
    precedence = 1
    _tag = 4

    def __post_init__(self):
        object.__setattr__(self, "depth", 1 + max(self.left.depth, self.right.depth))

    def _fields(self):
        return (self.left, self.right)

    @cached_property
    def _flat_key(self):
        return self.left._flat_key + ((4, "+"),) + self.right._flat_key

    @cached_property
    def _structure_key(self):
        return (4, self.left._structure_key, self.right._structure_key)


@dataclass(frozen=True, eq=False)
class Star(Regexp):
    body: Regexp
    precedence = 3
    _tag = 5

    def __post_init__(self):
        object.__setattr__(self, "depth", 1 + self.body.depth)

    def _fields(self):
        return (self.body,)

    @cached_property
    def _flat_key(self):
        return ((3, "("),) + self.body._flat_key + ((5, ")*"),)

    @cached_property
    def _structure_key(self):
        return (5, self.body._structure_key)


ZERO = Zero()
ONE = One()


def sorted_regexps(regexps: Iterable[Regexp]) -> List[Regexp]:
    return sorted(regexps, key=lambda e: e.sort_key)


# Parsing


class _Parser:
    """Recursive descent parser.

    sum     := cat ('+' cat)*
    cat     := postfix postfix*
    postfix := atom '*'*
    atom    := '(' sum ')' | '0' | '1' | letter | "'" token "'"
    """

    def __init__(self, text: str, alphabet: Optional[IndependenceAlphabet]):
        self.text = text
        self.alphabet = alphabet
        self.tokens = self._tokenize(text)
        self.index = 0

    def _tokenize(self, text):
        tokens = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch == "'":
                end = text.find("'", i + 1)
                if end == -1 or end == i + 1:
                    raise RegexpSyntaxError("Unterminated or empty quoted letter", text, i)
                tokens.append(("letter", text[i + 1 : end], i))
                i = end + 1
            elif ch in "+*()":
                tokens.append((ch, ch, i))
                i += 1
            elif ch in "01":
                tokens.append(("const", ch, i))
                i += 1
            elif ch in RESERVED:
                raise RegexpSyntaxError(f"Unexpected character {ch!r}", text, i)
            else:
                tokens.append(("letter", ch, i))
                i += 1
        tokens.append(("end", "", len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self) -> Regexp:
        expr = self.parse_sum()
        kind, value, pos = self.peek()
        if kind != "end":
            raise RegexpSyntaxError(f"Unexpected {value!r}", self.text, pos)
        return expr

    def parse_sum(self) -> Regexp:
        expr = self.parse_cat()
        while self.peek()[0] == "+":
            self.advance()
            expr = Sum(expr, self.parse_cat())
        return expr

    def parse_cat(self) -> Regexp:
        expr = self.parse_postfix()
        while self.peek()[0] in ("(", "const", "letter"):
            expr = Cat(expr, self.parse_postfix())
        return expr

    def parse_postfix(self) -> Regexp:
        expr = self.parse_atom()
        while self.peek()[0] == "*":
            self.advance()
            expr = Star(expr)
        return expr

    def parse_atom(self) -> Regexp:
        kind, value, pos = self.advance()
        if kind == "(":
            expr = self.parse_sum()
            kind, value, close_pos = self.advance()
            if kind != ")":
                raise RegexpSyntaxError("Expected ')'", self.text, close_pos)
            return expr
        if kind == "const":
            return ZERO if value == "0" else ONE
        if kind == "letter":
            if self.alphabet is not None and value not in self.alphabet.sigma:
                raise UnknownLetterError(value, pos)
            return Char(value)
        what = "end of input" if kind == "end" else repr(value)
        raise RegexpSyntaxError(f"Unexpected {what}", self.text, pos)


def parse_regexp(
    text: str, alphabet: Optional[IndependenceAlphabet] = None
) -> Regexp:
    """Parse a regexp; with an alphabet, letters outside it are rejected"""
    return _Parser(text, alphabet).parse()


def _render_letter(symbol: Letter) -> str:
    if len(symbol) == 1 and symbol not in RESERVED:
        return symbol
    return f"'{symbol}'"


def render_regexp(e: Regexp) -> str:
    return _render(e, 0)


def _render(e: Regexp, min_precedence: int) -> str:
    if isinstance(e, Char):
        text = _render_letter(e.symbol)
    elif isinstance(e, One):
        text = "1"
    elif isinstance(e, Zero):
        text = "0"
    elif isinstance(e, Sum):
        text = _render(e.left, 1) + "+" + _render(e.right, 2)
    elif isinstance(e, Cat):
        text = _render(e.left, 2) + _render(e.right, 3)
    elif isinstance(e, Star):
        text = _render(e.body, 3) + "*"
    else:
        raise TypeError(f"Not a regexp: {e!r}")
    if e.precedence < min_precedence:
        return f"({text})"
    return text


# Alphabets and words


def parse_alphabet(text: str) -> IndependenceAlphabet:
    """Parse the alphabet file format.

    Lines (or ';'-separated parts) of the form ``letters: a b c`` and
    ``indep: a b, a c``. Everything after '#' is a comment."""
    letters = None
    pairs = []
    for raw_line in text.replace(";", "\n").splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise AlphabetError(f"Malformed alphabet line {raw_line!r}")
        if key == "letters":
            letters = rest.split()
        elif key == "indep":
            for chunk in rest.split(","):
                if not chunk.strip():
                    continue
                pair = chunk.split()
                if len(pair) != 2:
                    raise AlphabetError(
                        f"Independence pairs need exactly two letters, got {chunk.strip()!r}"
                    )
                pairs.append(pair)
        else:
            raise AlphabetError(f"Unknown alphabet key {key!r}")
    if letters is None:
        raise AlphabetError("Alphabet declares no 'letters:' line")
    return IndependenceAlphabet.from_letters(letters, pairs)


def load_alphabet(filename: str) -> IndependenceAlphabet:
    """Load an alphabet from the text format, or a YAML/JSON mapping with 'letters' and 'indep'"""
    if filename.lower().endswith((".yaml", ".yml", ".json")):
        data = load_dict(filename)
        letters = data.get("letters")
        if isinstance(letters, str):
            letters = letters.split()
        if not letters:
            raise AlphabetError(f"No letters declared in {filename}")
        indep = data.get("indep") or []
        if isinstance(indep, str):
            indep = [chunk.split() for chunk in indep.split(",") if chunk.strip()]
        return IndependenceAlphabet.from_letters(letters, indep)
    with open(filename, "r") as file:
        return parse_alphabet(file.read())


def parse_word(text: str, alphabet: Optional[IndependenceAlphabet] = None) -> Word:
    """Single-character letters inline ("abba"), or whitespace-separated tokens"""
    text = text.strip()
    if text in ("", "ε"):
        return ()
    word = tuple(text.split()) if any(ch.isspace() for ch in text) else tuple(text)
    if alphabet is not None:
        for position, letter in enumerate(word):
            if letter not in alphabet.sigma:
                raise UnknownLetterError(letter, position)
    return word


def render_word(word: Word, empty: str = "ε") -> str:
    if not word:
        return empty
    if all(len(letter) == 1 for letter in word):
        return "".join(word)
    return " ".join(word)


# Structural functions


@lru_cache(maxsize=2**16)
def nullable(e: Regexp) -> bool:
    if isinstance(e, (One, Star)):
        return True
    if isinstance(e, (Char, Zero)):
        return False
    if isinstance(e, Sum):
        return nullable(e.left) or nullable(e.right)
    return nullable(e.left) and nullable(e.right)


@lru_cache(maxsize=2**16)
def is_empty(e: Regexp) -> bool:
    """Exact test for an empty language"""
    if isinstance(e, Zero):
        return True
    if isinstance(e, (Char, One, Star)):
        return False
    if isinstance(e, Sum):
        return is_empty(e.left) and is_empty(e.right)
    return is_empty(e.left) or is_empty(e.right)


@lru_cache(maxsize=2**16)
def letters_of(e: Regexp) -> FrozenSet[Letter]:
    if isinstance(e, Char):
        return frozenset((e.symbol,))
    if isinstance(e, (Zero, One)):
        return frozenset()
    if isinstance(e, Star):
        return letters_of(e.body)
    return letters_of(e.left) | letters_of(e.right)


class SizeMetrics(NamedTuple):
    node_count: int
    alphabetic_width: int


def size_metrics(e: Regexp) -> SizeMetrics:
    if isinstance(e, Char):
        return SizeMetrics(1, 1)
    if isinstance(e, (Zero, One)):
        return SizeMetrics(1, 0)
    if isinstance(e, Star):
        nodes, width = size_metrics(e.body)
        return SizeMetrics(nodes + 1, width)
    left, right = size_metrics(e.left), size_metrics(e.right)
    return SizeMetrics(
        left.node_count + right.node_count + 1,
        left.alphabetic_width + right.alphabetic_width,
    )


@lru_cache(maxsize=2**16)
def star_height(e: Regexp) -> int:
    if isinstance(e, Star):
        return 1 + star_height(e.body)
    if isinstance(e, (Cat, Sum)):
        return max(star_height(e.left), star_height(e.right))
    return 0
