"""Syllabic rewriting for Dyer presentations.

Type I operations merge two consecutive syllables of one generator and
strictly lower the degree. Type II operations apply a defining relation and
keep both the degree and the exponent sum: a commuting pair (m = 2) swaps
syllables with any exponents, and a pair of involutions with finite m >= 3
trades an alternating block [s, t]_m for [t, s]_m.

A word is reduced iff no word in its type II closure admits a type I
operation; the reduced words of one element form a single type II class, and
its ShortLex minimum is the normal form.
"""
from __future__ import annotations

import logging
from collections import deque
from typing import Iterable, Iterator, Optional

from django.conf import settings

from core.exceptions import ClosureBudgetExceeded, InvalidWord
from graphs.conversions import ensure_valid
from graphs.models import DyerGraph

from .models import IDENTITY, NormalForm, Syllable, SyllabicWord, canonical_exponent

logger = logging.getLogger(__name__)

Syllables = tuple[Syllable, ...]


class Rewriter:
    """Rewriting rules of one Dyer graph; syllables index into its marking."""

    def __init__(self, g: DyerGraph, budget: Optional[int] = None):
        ensure_valid(g)
        self.graph = g
        self.n = g.rank
        self.orders = g.orders
        self.budget = budget if budget is not None else settings.DYER_CLOSURE_BUDGET
        self.commutes = [[g.weight(i, j) == 2 for j in range(self.n)] for i in range(self.n)]
        # Finite braid length for pairs of involutions, None elsewhere.
        self.braid = [[None] * self.n for _ in range(self.n)]
        for i, j, m in g.index_pairs():
            if m.is_finite:
                self.braid[i][j] = self.braid[j][i] = m.value
        self._cache: dict[Syllables, NormalForm] = {}

    def syllable(self, gen: int, exp: int) -> Optional[Syllable]:
        if not 0 <= gen < self.n:
            raise InvalidWord(f"generator index {gen} out of range for rank {self.n}")
        e = canonical_exponent(exp, self.orders[gen])
        return Syllable(gen, e) if e else None

    def compress(self, letters: Iterable) -> SyllabicWord:
        stack: list[Syllable] = []
        for gen, exp in letters:
            s = self.syllable(gen, exp)
            if s is None:
                continue
            if stack and stack[-1].gen == s.gen:
                merged = self.syllable(s.gen, stack.pop().exp + s.exp)
                if merged is not None:
                    stack.append(merged)
            else:
                stack.append(s)
        return SyllabicWord(tuple(stack))

    def type1(self, w: Syllables, pos: int) -> Optional[Syllables]:
        if pos + 1 >= len(w) or w[pos].gen != w[pos + 1].gen:
            return None
        gen = w[pos].gen
        e = canonical_exponent(w[pos].exp + w[pos + 1].exp, self.orders[gen])
        middle = (Syllable(gen, e),) if e else ()
        return w[:pos] + middle + w[pos + 2:]

    def type2(self, w: Syllables, pos: int) -> Optional[Syllables]:
        if pos + 1 >= len(w):
            return None
        i, j = w[pos].gen, w[pos + 1].gen
        if i == j:
            return None
        if self.commutes[i][j]:
            return w[:pos] + (w[pos + 1], w[pos]) + w[pos + 2:]
        m = self.braid[i][j]
        if m is None or pos + m > len(w):
            return None
        block = w[pos:pos + m]
        expected = [(i, j)[k % 2] for k in range(m)]
        if [s.gen for s in block] != expected:
            return None
        swapped = tuple(Syllable((j, i)[k % 2], 1) for k in range(m))
        return w[:pos] + swapped + w[pos + m:]

    def type2_neighbours(self, w: Syllables) -> Iterator[Syllables]:
        for pos in range(len(w) - 1):
            result = self.type2(w, pos)
            if result is not None:
                yield result

    def _reducible_at(self, w: Syllables) -> Optional[int]:
        for pos in range(len(w) - 1):
            if w[pos].gen == w[pos + 1].gen:
                return pos
        return None

    def _closure(self, w: Syllables) -> tuple[set, Optional[Syllables]]:
        """Type II closure of ``w``; stops early at the first shorter word."""
        seen = {w}
        queue = deque([w])
        while queue:
            current = queue.popleft()
            pos = self._reducible_at(current)
            if pos is not None:
                return seen, self.type1(current, pos)
            for nxt in self.type2_neighbours(current):
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > self.budget:
                        raise ClosureBudgetExceeded(
                            f"rewriting closure exceeded {self.budget} words"
                        )
                    queue.append(nxt)
        return seen, None

    def normal_form(self, word: SyllabicWord | Iterable) -> NormalForm:
        letters = word.syllables if isinstance(word, SyllabicWord) else word
        current = self.compress(letters).syllables
        cached = self._cache.get(current)
        if cached is not None:
            return cached
        start = current
        while True:
            closure, shorter = self._closure(current)
            if shorter is None:
                break
            current = self.compress(shorter).syllables
        result = NormalForm.of(SyllabicWord(min(closure, key=_shortlex)))
        self._cache[start] = result
        return result

    def is_reduced(self, word: SyllabicWord) -> bool:
        w = word.syllables
        if self._reducible_at(w) is not None:
            return False
        return self._closure(w)[1] is None

    def word_length(self, word) -> int:
        return self.normal_form(word).word_length

    def multiply(self, nf: NormalForm, gen: int, exp: int = 1) -> NormalForm:
        return self.normal_form(nf.word.syllables + (Syllable(gen, exp),))

    def inverse(self, word: SyllabicWord) -> SyllabicWord:
        return self.compress((s.gen, -s.exp) for s in reversed(word.syllables))

    def product(self, *words: SyllabicWord) -> SyllabicWord:
        return self.compress(s for w in words for s in w.syllables)

    def letters(self) -> list[tuple[int, int]]:
        """Generators and their inverses, one letter per distinct element."""
        out = []
        for i, f in enumerate(self.orders):
            out.append((i, 1))
            if f != 2:
                out.append((i, -1))
        return out


def _shortlex(w: Syllables):
    return (len(w), tuple(s.sort_key for s in w))


def compress(g: DyerGraph, letters: Iterable) -> SyllabicWord:
    return Rewriter(g).compress(letters)


def apply_type1(g: DyerGraph, word: SyllabicWord, pos: int) -> Optional[SyllabicWord]:
    result = Rewriter(g).type1(word.syllables, pos)
    return SyllabicWord(result) if result is not None else None


def apply_type2(g: DyerGraph, word: SyllabicWord, pos: int) -> Optional[SyllabicWord]:
    result = Rewriter(g).type2(word.syllables, pos)
    return SyllabicWord(result) if result is not None else None


def normal_form(g: DyerGraph, word, budget: Optional[int] = None) -> NormalForm:
    return Rewriter(g, budget).normal_form(word)


def word_length(g: DyerGraph, word, budget: Optional[int] = None) -> int:
    return Rewriter(g, budget).word_length(word)


def inverse(g: DyerGraph, word: SyllabicWord) -> SyllabicWord:
    return Rewriter(g).inverse(word)


def product(g: DyerGraph, *words: SyllabicWord) -> SyllabicWord:
    return Rewriter(g).product(*words)
