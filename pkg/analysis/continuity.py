"""Growth rates along Dyer graphs whose growing weights tend to infinity."""
from __future__ import annotations

import logging
from typing import Iterable

from core.exceptions import DyerError, FamilyError, GrowthRateError
from graphs.conversions import ensure_valid
from series.growth import growth_series, power_series
from series.models import RationalSeries

from .models import ConvergenceReport, ConvergenceRow, Family
from .rates import growth_rate

logger = logging.getLogger(__name__)


def truncation_agreement(f_k: RationalSeries, f_limit: RationalSeries, m_max: int) -> int:
    """Number of leading coefficients shared by the expansions of 1/f_k and 1/f_limit."""
    left = power_series(f_k.invert(), m_max)
    right = power_series(f_limit.invert(), m_max)
    for m, (x, y) in enumerate(zip(left, right)):
        if x != y:
            return m
    return m_max + 1


def check_family(family: Family, ks: Iterable[int]) -> list:
    ks = list(ks)
    if not ks:
        raise FamilyError('no parameters given')
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise FamilyError(f"parameters must increase strictly, got {ks}")
    if not family.growing:
        raise FamilyError('the family has no growing slot')
    members = []
    try:
        for k in ks:
            members.append(ensure_valid(family.member(k)))
        expected = family.expected_limit()
        ensure_valid(family.limit)
    except DyerError as exc:
        raise FamilyError(f"invalid family member: {exc}") from exc
    if expected != family.limit:
        raise FamilyError('the limit graph is not the base graph with inf at the growing slots')
    return members


def continuity_experiment(family: Family, ks: Iterable[int], tol=None, truncation: int = 20) -> ConvergenceReport:
    ks = list(ks)
    members = check_family(family, ks)
    limit_rate = growth_rate(family.limit, tol)
    limit_series = growth_series(family.limit)

    rows = []
    for k, g in zip(ks, members):
        rate = growth_rate(g, tol)
        rows.append(ConvergenceRow(
            k=k,
            tau=rate,
            gap=limit_rate.tau_upper - rate.tau_lower,
            agreement=truncation_agreement(growth_series(g), limit_series, truncation),
        ))
        logger.debug('k=%d tau in [%s, %s]', k, float(rate.tau_lower), float(rate.tau_upper))

    monotone = not any(a.tau.proves_greater_than(b.tau) for a, b in zip(rows, rows[1:]))
    bounded = not any(r.tau.proves_greater_than(limit_rate) for r in rows)
    report = ConvergenceReport(tuple(rows), limit_rate, monotone, bounded)
    if not (monotone and bounded):
        raise GrowthRateError('growth rates along the family are not nondecreasing and bounded by the limit')
    if not report.gaps_decreasing:
        logger.info('gaps along the family are not monotone: %s', [float(x) for x in report.gaps])
    return report
