"""Exact integer polynomials and rational generating functions in z.

Arithmetic runs in sympy's sparse ring ZZ[z]; the dataclasses hold plain
integer coefficient tuples, constant term first, so they hash, compare and
serialise without sympy.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import ZZ
from sympy.polys.rings import ring

from core.exceptions import SeriesError

RING, Z = ring('z', ZZ)


def _strip(coefficients) -> tuple[int, ...]:
    coefficients = [int(c) for c in coefficients]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


@dataclass(frozen=True)
class IntPoly:
    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'coefficients', _strip(self.coefficients))

    @classmethod
    def from_element(cls, element) -> 'IntPoly':
        terms = {monom[0]: int(c) for monom, c in element.items()}
        size = max(terms, default=-1) + 1
        return cls(tuple(terms.get(k, 0) for k in range(size)))

    @classmethod
    def constant(cls, c: int) -> 'IntPoly':
        return cls((c,))

    @classmethod
    def q_integer(cls, k: int) -> 'IntPoly':
        """1 + z + ... + z^(k-1)."""
        return cls((1,) * k)

    @property
    def element(self):
        return RING.from_dict({(k,): c for k, c in enumerate(self.coefficients) if c})

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __call__(self, x: Union[int, Fraction]) -> Union[int, Fraction]:
        value = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def __add__(self, other: 'IntPoly') -> 'IntPoly':
        return IntPoly.from_element(self.element + other.element)

    def __sub__(self, other: 'IntPoly') -> 'IntPoly':
        return IntPoly.from_element(self.element - other.element)

    def __mul__(self, other: 'IntPoly') -> 'IntPoly':
        return IntPoly.from_element(self.element * other.element)

    def __neg__(self) -> 'IntPoly':
        return IntPoly(tuple(-c for c in self.coefficients))

    def __pow__(self, k: int) -> 'IntPoly':
        return IntPoly.from_element(self.element ** k)

    def gcd(self, other: 'IntPoly') -> 'IntPoly':
        return IntPoly.from_element(self.element.gcd(other.element))

    def to_json(self) -> list[int]:
        return list(self.coefficients)

    def __str__(self):
        if self.is_zero:
            return '0'
        return str(self.element.as_expr())


ONE = IntPoly.constant(1)


@dataclass(frozen=True)
class RationalSeries:
    """num/den in lowest terms, no common integer content, lowest den term positive."""
    num: IntPoly
    den: IntPoly = ONE

    def __post_init__(self):
        if self.den.is_zero:
            raise SeriesError('rational series with zero denominator')
        if self.num.is_zero:
            object.__setattr__(self, 'den', ONE)
            return
        _, num, den = self.num.element.cofactors(self.den.element)
        num, den = IntPoly.from_element(num), IntPoly.from_element(den)
        lowest = next(c for c in den.coefficients if c)
        if lowest < 0:
            num, den = -num, -den
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    @classmethod
    def of(cls, num, den=(1,)) -> 'RationalSeries':
        return cls(IntPoly(tuple(num)), IntPoly(tuple(den)))

    @property
    def is_polynomial(self) -> bool:
        return self.den == ONE

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: 'RationalSeries') -> 'RationalSeries':
        return RationalSeries(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: 'RationalSeries') -> 'RationalSeries':
        return RationalSeries(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: 'RationalSeries') -> 'RationalSeries':
        return RationalSeries(self.num * other.num, self.den * other.den)

    def __neg__(self) -> 'RationalSeries':
        return RationalSeries(-self.num, self.den)

    def __truediv__(self, other: 'RationalSeries') -> 'RationalSeries':
        return self * other.invert()

    def __pow__(self, k: int) -> 'RationalSeries':
        if k < 0:
            return self.invert() ** -k
        return RationalSeries(self.num ** k, self.den ** k)

    def invert(self) -> 'RationalSeries':
        if self.is_zero:
            raise SeriesError('cannot invert the zero series')
        return RationalSeries(self.den, self.num)

    def to_json(self) -> dict:
        return {'num': self.num.to_json(), 'den': self.den.to_json()}

    def __str__(self):
        return str(self.num) if self.is_polynomial else f'({self.num})/({self.den})'


ZERO_SERIES = RationalSeries(IntPoly())
ONE_SERIES = RationalSeries(ONE)
