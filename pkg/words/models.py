"""Syllables, syllabic words and the tables produced by ball enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate
from typing import NamedTuple, Optional

from graphs.models import ExtNat


def canonical_exponent(exp: int, order: ExtNat) -> int:
    """Representative of ``exp`` mod ``order`` of least absolute value.

    Ties (even order, exp = order/2) go to the positive side; 0 means the
    syllable is trivial. For order INF the exponent is kept as is.
    """
    if order.is_infinite:
        return exp
    p = order.value
    r = exp % p
    if 2 * r > p:
        r -= p
    return r


class Syllable(NamedTuple):
    gen: int
    exp: int

    @property
    def sort_key(self):
        return (self.gen, abs(self.exp), self.exp < 0)


@dataclass(frozen=True)
class SyllabicWord:
    syllables: tuple[Syllable, ...] = ()

    @classmethod
    def of(cls, pairs) -> 'SyllabicWord':
        return cls(tuple(Syllable(int(i), int(e)) for i, e in pairs))

    @property
    def degree(self) -> int:
        return len(self.syllables)

    @property
    def exponent_sum(self) -> int:
        return sum(abs(s.exp) for s in self.syllables)

    @property
    def shortlex_key(self):
        return (len(self.syllables), tuple(s.sort_key for s in self.syllables))

    def __len__(self):
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __lt__(self, other: 'SyllabicWord'):
        return self.shortlex_key < other.shortlex_key


IDENTITY = SyllabicWord()


@dataclass(frozen=True)
class NormalForm:
    word: SyllabicWord
    syllabic_length: int
    word_length: int

    @classmethod
    def of(cls, word: SyllabicWord) -> 'NormalForm':
        return cls(word, word.degree, word.exponent_sum)


@dataclass(frozen=True)
class GrowthTable:
    """Sphere sizes ``a`` for lengths 0..m_max.

    ``exhausted`` is set when enumeration ran out of new elements, so the
    group is finite and ``order`` is its size.
    """
    a: tuple[int, ...]
    exhausted: bool = False
    elements: Optional[tuple[tuple, ...]] = field(default=None, compare=False, repr=False)

    @property
    def b(self) -> tuple[int, ...]:
        return tuple(accumulate(self.a))

    @property
    def m_max(self) -> int:
        return len(self.a) - 1

    @property
    def order(self) -> Optional[int]:
        return sum(self.a) if self.exhausted else None

