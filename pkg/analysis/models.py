"""Result records for growth-rate analysis."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Optional

from graphs.models import INF, DyerGraph, VerdictKind


def decimal_bound(x: Fraction, up: bool, digits: int = 15) -> str:
    """``x`` rounded outward to ``digits`` places after the point."""
    scaled = Fraction(x) * 10 ** digits
    n = math.ceil(scaled) if up else math.floor(scaled)
    text = format(Decimal(n).scaleb(-digits), 'f')
    if '.' in text:
        text = text.rstrip('0').rstrip('.')
    return text


def lower_text(x: Fraction, digits: int = 15) -> str:
    return decimal_bound(x, up=False, digits=digits)


def upper_text(x: Fraction, digits: int = 15) -> str:
    return decimal_bound(x, up=True, digits=digits)


@dataclass(frozen=True)
class GrowthRateResult:
    """Certified bracket for tau; exact (1, 1) when the classification forces it."""
    tau_lower: Fraction
    tau_upper: Fraction
    is_one: bool
    kind: Optional[VerdictKind] = None
    exact: bool = False

    @property
    def width(self) -> Fraction:
        return self.tau_upper - self.tau_lower

    def proves_greater_than(self, other: 'GrowthRateResult') -> bool:
        return self.tau_lower > other.tau_upper

    def contains(self, x) -> bool:
        return self.tau_lower <= x <= self.tau_upper

    def to_json(self, digits: int = 15) -> dict:
        data = {
            'tau_lower': lower_text(self.tau_lower, digits),
            'tau_upper': upper_text(self.tau_upper, digits),
            'is_one': self.is_one,
        }
        if self.kind is not None:
            data['classification'] = str(self.kind.label)
        return data


@dataclass(frozen=True)
class FeketeReport:
    m: int
    b: int
    lower_holds: bool
    upper_holds: bool

    @property
    def holds(self) -> bool:
        return self.lower_holds and self.upper_holds


@dataclass(frozen=True)
class MonotonicityVerdict:
    witness: dict
    coefficients: tuple[tuple[int, ...], tuple[int, ...]]
    margins: tuple[int, ...]
    tau: Optional[tuple[GrowthRateResult, GrowthRateResult]] = None
    from_enumeration: bool = False

    @property
    def coefficients_hold(self) -> bool:
        return all(x >= 0 for x in self.margins)

    @property
    def tau_consistent(self) -> Optional[bool]:
        if self.tau is None:
            return None
        return not self.tau[0].proves_greater_than(self.tau[1])

    @property
    def holds(self) -> bool:
        return self.coefficients_hold and self.tau_consistent is not False

    def to_json(self, digits: int = 15) -> dict:
        return {
            'witness': self.witness,
            'holds': self.holds,
            'coefficients': [list(self.coefficients[0]), list(self.coefficients[1])],
            'margins': list(self.margins),
            'tau': None if self.tau is None else [t.to_json(digits) for t in self.tau],
            'tau_consistent': self.tau_consistent,
            'from_enumeration': self.from_enumeration,
        }


@dataclass(frozen=True)
class Family:
    """Dyer graphs on one simple graph; the ``growing`` slots take the value k.

    A slot is ``('vertex', v)`` or ``('edge', (u, v))``.
    """
    base: DyerGraph
    growing: tuple[tuple[str, object], ...]
    limit: DyerGraph

    def member(self, k) -> DyerGraph:
        g = self.base
        for kind, where in self.growing:
            if kind == 'vertex':
                g = g.with_order(where, k)
            else:
                g = g.with_edge_weight(where[0], where[1], k)
        return g

    def expected_limit(self) -> DyerGraph:
        return self.member(INF)


@dataclass(frozen=True)
class ConvergenceRow:
    k: int
    tau: GrowthRateResult
    gap: Fraction
    agreement: int


@dataclass(frozen=True)
class ConvergenceReport:
    rows: tuple[ConvergenceRow, ...]
    limit: GrowthRateResult
    monotone: bool
    bounded: bool

    @property
    def gaps(self) -> tuple[Fraction, ...]:
        return tuple(r.gap for r in self.rows)

    @property
    def gaps_decreasing(self) -> bool:
        return all(b <= a for a, b in zip(self.gaps, self.gaps[1:]))

    def to_json(self, digits: int = 15) -> dict:
        return {
            'rows': [
                {'k': r.k, **r.tau.to_json(digits), 'gap': upper_text(r.gap, digits), 'agreement': r.agreement}
                for r in self.rows
            ],
            'limit': self.limit.to_json(digits),
            'monotone': self.monotone,
            'bounded': self.bounded,
            'gaps_decreasing': self.gaps_decreasing,
        }

    def to_csv(self, digits: int = 15) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerow(['k', 'tau_lower', 'tau_upper', 'gap'])
        for r in self.rows:
            writer.writerow([
                r.k, lower_text(r.tau.tau_lower, digits), upper_text(r.tau.tau_upper, digits),
                upper_text(r.gap, digits),
            ])
        writer.writerow(['inf', lower_text(self.limit.tau_lower, digits), upper_text(self.limit.tau_upper, digits), '0'])
        return out.getvalue()


@dataclass(frozen=True)
class SweepMismatch:
    graph: DyerGraph
    detail: str
