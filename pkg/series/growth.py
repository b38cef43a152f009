"""Growth series of Dyer systems.

Spherical systems factor into a finite Coxeter part and isolated cyclic
factors, each with a closed form. Every other system satisfies

    (-1)^(#S+1) / f_S(z) = sum over proper subsets T of S of (-1)^#T / f_T(z)

over its parabolic subsystems, which is solved for f_S bottom-up with one
memo entry per vertex subset.
"""
from __future__ import annotations

import logging
from typing import Optional

from django.conf import settings

from core.exceptions import NotSpherical, RankCapExceeded, SeriesError
from graphs.classification import classify_coxeter, dyer_verdict
from graphs.conversions import ensure_valid, partition_generators
from graphs.models import CoxeterGraph, DyerGraph, ExtNat, VerdictKind
from words.models import GrowthTable

from .models import ONE, ONE_SERIES, IntPoly, RationalSeries

logger = logging.getLogger(__name__)


def cyclic_growth(p) -> RationalSeries:
    p = ExtNat.parse(p)
    if p.is_infinite:
        return RationalSeries.of((1, 1), (1, -1))
    half, odd = divmod(p.value, 2)
    if odd:
        return RationalSeries.of((1,) + (2,) * half)
    return RationalSeries.of((1,) + (2,) * (half - 1) + (1,))


def spherical_coxeter_poly(g: DyerGraph) -> IntPoly:
    """Product of [e + 1]_z over the exponents e of every irreducible component."""
    verdict = classify_coxeter(g)
    if not verdict.is_spherical:
        raise NotSpherical(f"Coxeter graph on {list(g.vertices)} is {verdict.kind.label}, not spherical")
    poly = ONE
    for component in verdict.components:
        for e in component.type.exponents:
            poly = poly * IntPoly.q_integer(e + 1)
    return poly


class GrowthSeriesSolver:
    """Growth series of every parabolic subsystem of one Dyer graph, memoised by vertex subset."""

    def __init__(self, g: DyerGraph, rank_cap: Optional[int] = None):
        ensure_valid(g)
        cap = rank_cap if rank_cap is not None else settings.DYER_RANK_CAP
        if g.rank > cap:
            raise RankCapExceeded(f"rank {g.rank} is above the recursion cap {cap}")
        self.graph = g
        self.full = (1 << g.rank) - 1
        self._memo: dict[int, RationalSeries] = {}

    def subsystem(self, mask: int) -> DyerGraph:
        return self.graph.full_subgraph(i for i in range(self.graph.rank) if mask >> i & 1)

    def kind(self, mask: int) -> VerdictKind:
        return dyer_verdict(self.subsystem(mask)).kind

    def spherical_series(self, mask: int) -> RationalSeries:
        sub = self.subsystem(mask)
        v2, vp, vinf = partition_generators(sub)
        coxeter = CoxeterGraph.from_dyer(sub.full_subgraph(sub.index(v) for v in v2))
        f = RationalSeries(spherical_coxeter_poly(coxeter))
        for v in vp + vinf:
            f = f * cyclic_growth(sub.order(v))
        return f

    def reciprocal_sum(self, mask: int) -> RationalSeries:
        """Sum over proper subsets T of ``mask`` of (-1)^#T / f_T."""
        total = ONE_SERIES
        sub = (mask - 1) & mask
        while sub:
            term = self.series(sub).invert()
            total = total - term if bin(sub).count('1') % 2 else total + term
            sub = (sub - 1) & mask
        return total

    def series(self, mask: Optional[int] = None) -> RationalSeries:
        mask = self.full if mask is None else mask
        cached = self._memo.get(mask)
        if cached is not None:
            return cached
        if mask == 0 or self.kind(mask) == VerdictKind.SPHERICAL:
            f = self.spherical_series(mask) if mask else ONE_SERIES
        else:
            total = self.reciprocal_sum(mask)
            if total.is_zero:
                raise SeriesError(f"alternating sum vanished for subsystem {self.subsystem(mask).vertices}")
            f = total.invert() if bin(mask).count('1') % 2 else -total.invert()
        self._memo[mask] = f
        return f

    def identity_holds(self, mask: Optional[int] = None) -> bool:
        mask = self.full if mask is None else mask
        lhs = self.series(mask).invert()
        if bin(mask).count('1') % 2 == 0:
            lhs = -lhs
        return lhs == self.reciprocal_sum(mask)


def growth_series(g: DyerGraph, rank_cap: Optional[int] = None) -> RationalSeries:
    solver = GrowthSeriesSolver(g, rank_cap)
    f = solver.series()
    logger.debug('growth series of %s from %d subsystems: %s', list(g.vertices), len(solver._memo), f)
    return f


def product_series(g: DyerGraph, rank_cap: Optional[int] = None) -> RationalSeries:
    """f_2 * f_p * f_inf for a spherical or Euclidean system, f_2 taken from the recursion."""
    verdict = dyer_verdict(ensure_valid(g))
    if not verdict.has_growth_rate_one:
        raise SeriesError('the product decomposition needs a spherical or Euclidean system')
    v2, vp, vinf = partition_generators(g)
    f = growth_series(g.full_subgraph(g.index(v) for v in v2), rank_cap)
    for v in vp + vinf:
        f = f * cyclic_growth(g.order(v))
    return f


def recursion_identity_holds(g: DyerGraph, rank_cap: Optional[int] = None) -> bool:
    solver = GrowthSeriesSolver(g, rank_cap)
    if solver.kind(solver.full) == VerdictKind.SPHERICAL:
        raise SeriesError('the alternating-sum identity holds for non-spherical systems only')
    return solver.identity_holds()


def power_series(r: RationalSeries, m_max: int) -> list[int]:
    """Integer expansion of num/den up to z^m_max."""
    d0 = r.den[0]
    if d0 == 0:
        raise SeriesError('denominator vanishes at z = 0; no power series expansion')
    a = []
    for m in range(m_max + 1):
        value = r.num[m] - sum(r.den[k] * a[m - k] for k in range(1, min(m, r.den.degree) + 1))
        q, rem = divmod(value, d0)
        if rem:
            raise SeriesError(f"coefficient of z^{m} is not an integer ({value}/{d0})")
        a.append(q)
    return a


def series_coefficients(r: RationalSeries, m_max: int) -> GrowthTable:
    a = power_series(r, m_max)
    if a[0] != 1 or any(x < 0 for x in a):
        raise SeriesError(f"not a growth series: coefficients start {a[:8]}")
    return GrowthTable(tuple(a))
