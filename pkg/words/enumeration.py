"""Breadth-first enumeration of Cayley balls and marking comparison."""
from __future__ import annotations

import logging
from typing import Iterable, Optional

from django.conf import settings

from core.exceptions import BallBudgetExceeded, RankMismatch
from graphs.models import DyerGraph

from .models import IDENTITY, GrowthTable, NormalForm, SyllabicWord
from .rewriting import Rewriter

logger = logging.getLogger(__name__)


def ball_budget(budget: Optional[int]) -> int:
    return budget if budget is not None else settings.DYER_BALL_BUDGET


def level_walk(start, step, m_max: Optional[int], budget: int, keep_elements: bool) -> GrowthTable:
    """Level BFS from ``start``; ``step(x)`` yields the neighbours of ``x``.

    Elements are compared by value; each level is sorted before it is
    expanded so the enumeration order never depends on hashing. With
    ``m_max`` None the walk runs until no new element appears.
    """
    seen = {start}
    frontier = [start]
    a = [1]
    levels = [(start,)]
    m = 0
    while m_max is None or m < m_max:
        m += 1
        found = set()
        for x in frontier:
            for y in step(x):
                if y not in seen:
                    seen.add(y)
                    found.add(y)
            if len(seen) > budget:
                raise BallBudgetExceeded(f"ball enumeration exceeded {budget} elements at length {m}")
        if not found:
            logger.debug('enumeration exhausted at length %d with %d elements', m, len(seen))
            if m_max is not None:
                a.extend([0] * (m_max - m + 1))
            return GrowthTable(tuple(a), True, tuple(levels) if keep_elements else None)
        frontier = sorted(found)
        a.append(len(frontier))
        levels.append(tuple(frontier))
    return GrowthTable(tuple(a), False, tuple(levels) if keep_elements else None)


def ball(g: DyerGraph, m_max: Optional[int], budget: Optional[int] = None,
         keep_elements: bool = False, rewriter: Optional[Rewriter] = None) -> GrowthTable:
    """Sphere sizes of the Cayley graph of D(g) up to length ``m_max``.

    Elements are identified by their normal forms; level m holds the elements
    of word length exactly m.
    """
    rewriter = rewriter or Rewriter(g)
    letters = rewriter.letters()

    def step(word: SyllabicWord):
        nf = NormalForm.of(word)
        for gen, exp in letters:
            yield rewriter.multiply(nf, gen, exp).word

    return level_walk(IDENTITY, step, m_max, ball_budget(budget), keep_elements)


def subgroup_ball(g: DyerGraph, generators: Iterable[SyllabicWord], m_max: int,
                  budget: Optional[int] = None) -> GrowthTable:
    """Ball of the subgroup generated by ``generators``, lengths counted in those words."""
    rewriter = Rewriter(g)
    gens = []
    for w in generators:
        gens.append(w)
        gens.append(rewriter.inverse(w))

    def step(word: SyllabicWord):
        for h in gens:
            yield rewriter.normal_form(rewriter.product(word, h)).word

    return level_walk(IDENTITY, step, m_max, ball_budget(budget), False)


def group_order(g: DyerGraph, budget: Optional[int] = None) -> Optional[int]:
    """Order of D(g) when ball enumeration closes within the budget, else None."""
    try:
        table = ball(g, None, budget=budget)
    except BallBudgetExceeded:
        return None
    return table.order


def free_words(rank: int, length: int):
    """Freely reduced words over s_i^{+1}, s_i^{-1} by increasing length."""
    letters = [(i, e) for i in range(rank) for e in (1, -1)]
    level = [()]
    yield ()
    for _ in range(length):
        nxt = []
        for w in level:
            for x in letters:
                if w and w[-1] == (x[0], -x[1]):
                    continue
                nxt.append(w + (x,))
        yield from nxt
        level = nxt


def _disagrees(short: dict, long: dict) -> bool:
    """True when some class of ``long`` words with a short member splits."""
    classes: dict = {}
    for w, (k1, k2) in long.items():
        classes.setdefault(k1, set()).add(k2)
    return any(len(classes[k1]) > 1 for k1, _ in short.values())


def marking_agreement_radius(g1: DyerGraph, g2: DyerGraph, r_max: int,
                             budget: Optional[int] = None) -> int:
    """Largest R <= r_max on which the presentation kernels of g1 and g2 agree.

    Every freely reduced word of length <= R is u v^-1 with |u| <= R // 2 and
    |v| <= (R + 1) // 2, and it is trivial exactly when u and v have equal
    normal forms. So the kernels agree on the R-ball iff no class of equal
    elements in one group, over words of length <= (R + 1) // 2 holding a
    word of length <= R // 2, is split in the other group.
    """
    if g1.rank != g2.rank:
        raise RankMismatch(f"markings of rank {g1.rank} and {g2.rank} cannot be compared")
    limit = ball_budget(budget)
    r1, r2 = Rewriter(g1), Rewriter(g2)
    depth = (r_max + 1) // 2
    forms: dict[tuple, tuple] = {(): (IDENTITY, IDENTITY)}
    for w in free_words(g1.rank, depth):
        if not w:
            continue
        n1, n2 = forms[w[:-1]]
        gen, exp = w[-1]
        forms[w] = (
            r1.multiply(NormalForm.of(n1), gen, exp).word,
            r2.multiply(NormalForm.of(n2), gen, exp).word,
        )
        if len(forms) > limit:
            raise BallBudgetExceeded(f"marking comparison exceeded {limit} words")

    for radius in range(1, r_max + 1):
        short = {w: k for w, k in forms.items() if len(w) <= radius // 2}
        long = {w: k for w, k in forms.items() if len(w) <= (radius + 1) // 2}
        swapped_short = {w: (k2, k1) for w, (k1, k2) in short.items()}
        swapped_long = {w: (k2, k1) for w, (k1, k2) in long.items()}
        if _disagrees(short, long) or _disagrees(swapped_short, swapped_long):
            logger.debug('kernels first differ on words of length %d', radius)
            return radius - 1
    return r_max
