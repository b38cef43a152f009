"""Coefficientwise comparison of growth along the order g <= g2."""
from __future__ import annotations

import logging
from typing import Optional

from core.exceptions import NoOrderMorphism, RankCapExceeded
from graphs.conversions import ensure_valid
from graphs.models import DyerGraph
from graphs.morphisms import find_order_morphism, is_order_morphism
from series.growth import growth_series, series_coefficients
from words.enumeration import ball

from .models import MonotonicityVerdict
from .rates import growth_rate

logger = logging.getLogger(__name__)


def _coefficients(g: DyerGraph, m_max: int) -> tuple[tuple[int, ...], bool]:
    try:
        return series_coefficients(growth_series(g), m_max).a, False
    except RankCapExceeded:
        logger.info('rank %d is above the recursion cap; counting the ball instead', g.rank)
        return ball(g, m_max).a, True


def check_monotonicity(g: DyerGraph, g2: DyerGraph, phi: Optional[dict] = None,
                       m_max: int = 15, tol=None) -> MonotonicityVerdict:
    """a(m) <= a'(m) for m <= m_max, and tau intervals that never prove tau(g) > tau(g2)."""
    ensure_valid(g)
    ensure_valid(g2)
    if phi is None:
        phi = find_order_morphism(g, g2)
        if phi is None:
            raise NoOrderMorphism(f"no order morphism from {list(g.vertices)} into {list(g2.vertices)}")
    elif not is_order_morphism(g, g2, phi):
        raise NoOrderMorphism(f"{phi} does not witness g <= g2")

    a1, enumerated1 = _coefficients(g, m_max)
    a2, enumerated2 = _coefficients(g2, m_max)
    margins = tuple(y - x for x, y in zip(a1, a2))

    tau = None
    if not (enumerated1 or enumerated2):
        tau = (growth_rate(g, tol), growth_rate(g2, tol))
    verdict = MonotonicityVerdict(dict(phi), (a1, a2), margins, tau, enumerated1 or enumerated2)
    if not verdict.holds:
        logger.warning('growth comparison failed for witness %s: margins %s', phi, margins)
    return verdict
