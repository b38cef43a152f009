"""Growth rates as certified rational brackets.

tau is the reciprocal of the radius of convergence of the growth series.
Its coefficients are non-negative, so the radius is the smallest positive
real pole: the smallest root in (0, 1) of the reduced denominator. Roots are
isolated per irreducible factor with Sturm chains and bisected over exact
rationals.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional

from django.conf import settings
from sympy import Poly, symbols

from core.exceptions import GrowthRateError
from graphs.classification import classify_dyer
from series.growth import growth_series, series_coefficients
from series.models import IntPoly, RationalSeries

from .models import FeketeReport, GrowthRateResult

logger = logging.getLogger(__name__)

z = symbols('z')


def tolerance(tol=None) -> Fraction:
    value = Fraction(str(tol if tol is not None else settings.DYER_TOLERANCE))
    if value <= 0:
        raise GrowthRateError(f"tolerance must be positive, got {value}")
    return value


def _fractions(poly: Poly) -> list[Fraction]:
    """Coefficients, highest degree first, as exact fractions."""
    return [Fraction(int(c.p), int(c.q)) for c in poly.all_coeffs()]


def _horner(coefficients: list[Fraction], x: Fraction) -> Fraction:
    value = Fraction(0)
    for c in coefficients:
        value = value * x + c
    return value


class SturmChain:
    def __init__(self, poly: Poly):
        self.chain = [_fractions(p) for p in poly.sturm()]

    def variations(self, x: Fraction) -> int:
        signs = [v for v in (_horner(p, x) for p in self.chain) if v != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    def count(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots in (a, b]."""
        return self.variations(a) - self.variations(b)


def _bisect(chain: SturmChain, tol: Fraction, lo: Fraction = Fraction(0),
            hi: Fraction = Fraction(1)) -> tuple[Fraction, Fraction]:
    """Shrink (lo, hi], which holds the smallest root in (0, 1), to width tol * lo^2."""
    while hi - lo > tol * lo * lo:
        mid = (lo + hi) / 2
        if chain.count(Fraction(0), mid) >= 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def isolate_smallest_root(q: IntPoly, tol=None) -> Optional[tuple[Fraction, Fraction]]:
    """Bracket [lo, hi] around the smallest root of ``q`` in (0, 1), or None.

    ``hi - lo <= tol * lo^2`` and no root of ``q`` lies in (0, lo]. A rational
    root comes back as the exact bracket (r, r).
    """
    tol = tolerance(tol)
    if q.degree < 1:
        return None
    poly = Poly(list(reversed(q.coefficients)), z, domain='ZZ').sqf_part()
    # one [lo, hi, chain] per irreducible factor; chain is None for an exact root
    brackets = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            c1, c0 = (int(c) for c in factor.all_coeffs())
            root = Fraction(-c0, c1)
            if 0 < root < 1:
                brackets.append([root, root, None])
        else:
            chain = SturmChain(factor)
            if chain.count(Fraction(0), Fraction(1)):
                brackets.append([*_bisect(chain, tol), chain])
    if not brackets:
        return None
    # distinct factors of a square-free polynomial share no root, so
    # refining overlapping brackets separates them
    width = tol
    while True:
        brackets.sort(key=lambda b: b[0])
        best = brackets[0]
        rivals = [b for b in brackets[1:] if b[0] <= best[1]]
        if not rivals:
            return best[0], best[1]
        width /= 4
        logger.debug('refining %d overlapping root brackets', len(rivals) + 1)
        for b in (best, *rivals):
            if b[2] is not None:
                b[0], b[1] = _bisect(b[2], width, b[0], b[1])


def rate_from_series(f: RationalSeries, tol=None) -> GrowthRateResult:
    """tau read off the denominator alone, with no use of the classification."""
    bracket = isolate_smallest_root(f.den, tol)
    if bracket is None:
        return GrowthRateResult(Fraction(1), Fraction(1), True)
    lo, hi = bracket
    return GrowthRateResult(1 / hi, 1 / lo, False, exact=lo == hi)


def check_ratio(f: RationalSeries, result: GrowthRateResult, degree: Optional[int] = None) -> Fraction:
    """Smoothed coefficient ratio (a(m+6) / a(m))^(1/6) must sit near tau."""
    m = degree if degree is not None else settings.DYER_RATIO_CHECK_DEGREE
    slack = Fraction(settings.DYER_RATIO_SLACK)
    a = series_coefficients(f, m + 6).a
    if a[m] == 0:
        raise GrowthRateError(f"a({m}) vanishes for a system with tau > 1")
    ratio = Fraction(a[m + 6], a[m])
    low, high = result.tau_lower / (1 + slack), result.tau_upper * (1 + slack)
    if not (low ** 6 <= ratio <= high ** 6):
        raise GrowthRateError(
            f"coefficient ratio {float(ratio) ** (1 / 6):.6f} at degree {m} is outside "
            f"[{float(low):.6f}, {float(high):.6f}]"
        )
    return ratio


def growth_rate(g, tol=None) -> GrowthRateResult:
    verdict = classify_dyer(g)
    if verdict.has_growth_rate_one:
        return GrowthRateResult(Fraction(1), Fraction(1), True, verdict.kind, exact=True)
    f = growth_series(g)
    bracket = isolate_smallest_root(f.den, tol)
    if bracket is None:
        raise GrowthRateError(
            f"denominator {f.den} has no root in (0, 1) although {list(g.vertices)} is neither "
            "spherical nor Euclidean"
        )
    lo, hi = bracket
    result = GrowthRateResult(1 / hi, 1 / lo, False, verdict.kind, exact=lo == hi)
    check_ratio(f, result)
    logger.debug('tau(%s) in [%s, %s]', list(g.vertices), float(result.tau_lower), float(result.tau_upper))
    return result


def fekete_check(g, m: int, result: Optional[GrowthRateResult] = None) -> FeketeReport:
    """b(m) >= tau_lower^m exactly; for exponential growth also b(m)^(1/m) <= tau_upper (1 + slack)."""
    result = result or growth_rate(g)
    b = series_coefficients(growth_series(g), m).b[m]
    lower = Fraction(b) >= result.tau_lower ** m
    if result.is_one:
        upper = True
    else:
        bound = result.tau_upper * (1 + Fraction(settings.DYER_RATIO_SLACK))
        upper = Fraction(b) <= bound ** m
    return FeketeReport(m, b, lower, upper)
