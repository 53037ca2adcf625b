"""Reduced words in a free group F_k over the basis x1, ..., xk.

A word is stored as a tuple of nonzero signed integers: ``+j`` stands for the
letter x_j and ``-j`` for its inverse.  Words are always freely reduced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Word",
    "GeneratingSet",
    "WordSyntaxError",
    "GeneratorIndexError",
    "free_reduce",
    "parse_word",
    "parse_generating_set",
    "multiply",
    "inverse",
    "power",
    "disjoint",
]


class WordSyntaxError(ValueError):
    """Raised for text that does not follow the word grammar."""


class GeneratorIndexError(ValueError):
    """Raised when a generator index falls outside 1..k."""


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


@dataclass(frozen=True, order=True)
class Word:
    """An immutable, freely reduced element of a free group.

    >>> Word((1, 2)) * Word((-2, -1))
    Word('1')
    >>> str(Word((1, 2, -1)) ** 2)
    'x1 x2 x2 X1'
    """

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def generator(cls, j: int) -> "Word":
        return cls((j,))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, d: int) -> "Word":
        if d < 0:
            return Word(self.inverse().letters * -d)
        return Word(self.letters * d)

    def inverse(self) -> "Word":
        return Word(tuple(-a for a in reversed(self.letters)))

    def support(self) -> frozenset[int]:
        """Generator indices occurring in the word."""
        return frozenset(abs(a) for a in self.letters)

    def max_generator(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{a}" if a > 0 else f"X{-a}" for a in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def multiply(a: Word, b: Word) -> Word:
    return a * b


def inverse(a: Word) -> Word:
    return a.inverse()


def power(a: Word, d: int) -> Word:
    if d < 0:
        raise ValueError("power() takes a non-negative exponent; use inverse() first")
    return a ** d


def disjoint(a: Word, b: Word) -> bool:
    """True iff ``a`` and ``b`` share no generator."""
    return a.support().isdisjoint(b.support())


_SEP = re.compile(r"[\s*]+")
_TERM = re.compile(r"^(?P<atom>[xX][0-9]+|[a-zA-Z])(?:\^(?P<exp>-?[0-9]+))?$")


def _atom_letter(atom: str) -> int:
    if len(atom) > 1:
        j = int(atom[1:])
        return j if atom[0] == "x" else -j
    if atom.islower():
        return ord(atom) - ord("a") + 1
    return -(ord(atom) - ord("A") + 1)


def parse_word(text: str, ambient_rank: int) -> Word:
    """Parse ``text`` into a reduced word of F_k.

    Terms are ``x<i>``/``X<i>`` or a single letter (``a`` = x1, ``B`` = x2^-1,
    ...), optionally followed by ``^<int>``, separated by whitespace or ``*``.
    ``1`` is the identity.

    >>> str(parse_word("a b A B", 2))
    'x1 x2 X1 X2'
    >>> str(parse_word("x1^2 * x2^-1", 2))
    'x1 x1 X2'
    """
    if ambient_rank < 1:
        raise GeneratorIndexError("ambient rank must be at least 1")
    stripped = text.strip()
    if stripped == "1":
        return Word()
    if not stripped:
        raise WordSyntaxError("empty word; write '1' for the identity")
    letters: list[int] = []
    for token in _SEP.split(stripped):
        if not token:
            continue
        m = _TERM.match(token)
        if m is None:
            raise WordSyntaxError(f"bad token {token!r}")
        a = _atom_letter(m["atom"])
        if not 1 <= abs(a) <= ambient_rank:
            raise GeneratorIndexError(
                f"generator {m['atom']!r} has index {abs(a)}, outside 1..{ambient_rank}"
            )
        exp = int(m["exp"]) if m["exp"] is not None else 1
        letters.extend([a if exp > 0 else -a] * abs(exp))
    return Word(tuple(letters))


@dataclass(frozen=True)
class GeneratingSet:
    """A finite list of words generating a subgroup of F_k."""

    ambient_rank: int
    generators: tuple[Word, ...] = field(default=())

    def __post_init__(self):
        if self.ambient_rank < 1:
            raise GeneratorIndexError("ambient rank must be at least 1")
        gens = tuple(g if isinstance(g, Word) else Word(tuple(g)) for g in self.generators)
        for g in gens:
            if g.max_generator() > self.ambient_rank:
                raise GeneratorIndexError(
                    f"{g} uses a generator outside 1..{self.ambient_rank}"
                )
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, ambient_rank: int, *words: Word | Sequence[int]) -> "GeneratingSet":
        return cls(ambient_rank, tuple(words))

    def __iter__(self) -> Iterator[Word]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __str__(self) -> str:
        return ", ".join(str(g) for g in self.generators) or "1"


def parse_generating_set(text: str, ambient_rank: int) -> GeneratingSet:
    """Parse a comma-separated list of words."""
    parts = [p for p in text.split(",")]
    if len(parts) == 1 and not parts[0].strip():
        return GeneratingSet(ambient_rank)
    return GeneratingSet(ambient_rank, tuple(parse_word(p, ambient_rank) for p in parts))
