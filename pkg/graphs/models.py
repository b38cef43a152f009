"""Value types for marked Dyer graphs and Dyer matrices.

Nothing here is stored in a database; every type is an immutable dataclass
so instances can be hashed, memoised and shared freely.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import networkx as nx
from django.db import models

from core.exceptions import InvalidDyerGraph, InvalidWeight


@total_ordering
class ExtNat:
    """An integer >= 2 or the top element INF.

    Finite values compare and hash like the plain integers they wrap, so
    ``ExtNat(2) == 2`` holds and both may key the same dict slot.
    """
    __slots__ = ('_value',)

    def __init__(self, value: Optional[int]):
        if value is not None:
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidWeight(f"weight must be an integer or inf, got {value!r}")
            if value < 2:
                raise InvalidWeight(f"weight must be >= 2, got {value}")
        object.__setattr__(self, '_value', value)

    def __setattr__(self, name, value):
        raise AttributeError('ExtNat is immutable')

    @classmethod
    def parse(cls, raw: Union['ExtNat', int, str, None]) -> 'ExtNat':
        if isinstance(raw, ExtNat):
            return raw
        if raw is None:
            return INF
        if isinstance(raw, str):
            text = raw.strip().lower()
            if text in ('inf', 'infinity', '∞'):
                return INF
            try:
                return cls(int(text))
            except ValueError:
                raise InvalidWeight(f"cannot read weight {raw!r}") from None
        return cls(raw)

    @property
    def value(self) -> Optional[int]:
        return self._value

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    def _key(self):
        return (1, 0) if self._value is None else (0, self._value)

    def __eq__(self, other):
        if isinstance(other, ExtNat):
            return self._value == other._value
        if isinstance(other, int) and not isinstance(other, bool):
            return self._value == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self._value is not None and self._value < other
        if isinstance(other, ExtNat):
            return self._key() < other._key()
        return NotImplemented

    def __hash__(self):
        return hash(self._value) if self._value is not None else hash(float('inf'))

    def __int__(self):
        if self._value is None:
            raise InvalidWeight('INF has no integer value')
        return self._value

    def __repr__(self):
        return 'INF' if self._value is None else f'ExtNat({self._value})'

    def __str__(self):
        return 'inf' if self._value is None else str(self._value)

    def to_json(self) -> Union[int, str]:
        return 'inf' if self._value is None else self._value


INF = ExtNat(None)
TWO = ExtNat(2)


class Edge(NamedTuple):
    u: str
    v: str
    m: ExtNat


class VerdictKind(models.TextChoices):
    SPHERICAL = 'Spherical', 'Spherical'
    EUCLIDEAN = 'Euclidean', 'Euclidean'
    NEITHER = 'Neither', 'Neither'


@dataclass(frozen=True)
class DyerGraph:
    """A marked Dyer graph.

    ``orders[i]`` is the vertex weight f of ``vertices[i]``; the marking is the
    order of ``vertices``. Construction does not check the Dyer invariants, so
    that ``validate_graph`` can report on broken input; use ``build`` for the
    normalised form.
    """
    vertices: tuple[str, ...]
    orders: tuple[ExtNat, ...]
    edges: tuple[Edge, ...] = ()

    @classmethod
    def build(cls, orders, edges: Iterable = ()) -> 'DyerGraph':
        """``orders`` is a mapping or a sequence of ``(id, f)`` pairs; edges are ``(u, v, m)``."""
        pairs = list(orders.items()) if hasattr(orders, 'items') else list(orders)
        vertices = tuple(str(v) for v, _ in pairs)
        weights = tuple(ExtNat.parse(f) for _, f in pairs)
        position = {v: i for i, v in enumerate(vertices)}
        normalised = []
        for u, v, m in edges:
            u, v = str(u), str(v)
            if position.get(u, -1) > position.get(v, -1):
                u, v = v, u
            normalised.append(Edge(u, v, ExtNat.parse(m)))
        normalised.sort(key=lambda e: (position.get(e.u, len(position)), position.get(e.v, len(position)), e.u, e.v))
        return cls(vertices, weights, tuple(normalised))

    @property
    def rank(self) -> int:
        return len(self.vertices)

    @cached_property
    def _position(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _weights(self) -> dict:
        table = {}
        for e in self.edges:
            if e.u in self._position and e.v in self._position:
                table[frozenset((self._position[e.u], self._position[e.v]))] = e.m
        return table

    def index(self, vertex: str) -> int:
        try:
            return self._position[vertex]
        except KeyError:
            raise InvalidDyerGraph(f"unknown vertex {vertex!r}") from None

    def order(self, vertex: str) -> ExtNat:
        return self.orders[self.index(vertex)]

    def weight(self, i: int, j: int) -> ExtNat:
        """m_ij in the Dyer matrix sense: f on the diagonal, 2 for non-edges."""
        if i == j:
            return self.orders[i]
        return self._weights.get(frozenset((i, j)), TWO)

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and frozenset((i, j)) in self._weights

    def degree(self, i: int) -> int:
        return sum(1 for pair in self._weights if i in pair)

    def index_pairs(self):
        """Edges as ``(i, j, m)`` with ``i < j`` in the marking."""
        return sorted((min(p), max(p), m) for p, m in self._weights.items())

    def full_subgraph(self, indices: Iterable[int]) -> 'DyerGraph':
        keep = sorted(set(indices))
        kept = {self.vertices[i] for i in keep}
        return DyerGraph(
            tuple(self.vertices[i] for i in keep),
            tuple(self.orders[i] for i in keep),
            tuple(e for e in self.edges if e.u in kept and e.v in kept),
        )

    def with_order(self, vertex: str, f) -> 'DyerGraph':
        i = self.index(vertex)
        orders = list(self.orders)
        orders[i] = ExtNat.parse(f)
        return DyerGraph(self.vertices, tuple(orders), self.edges)

    def with_edge_weight(self, u: str, v: str, m) -> 'DyerGraph':
        pair = {u, v}
        if not any({e.u, e.v} == pair for e in self.edges):
            raise InvalidDyerGraph(f"no edge {u}-{v} to reweight")
        edges = tuple(Edge(e.u, e.v, ExtNat.parse(m)) if {e.u, e.v} == pair else e for e in self.edges)
        return DyerGraph(self.vertices, self.orders, edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for i, v in enumerate(self.vertices):
            graph.add_node(v, index=i, f=self.orders[i])
        for e in self.edges:
            graph.add_edge(e.u, e.v, m=e.m)
        return graph


@dataclass(frozen=True)
class CoxeterGraph(DyerGraph):
    """A Dyer graph whose vertex weights are all 2."""

    def __post_init__(self):
        if any(f != 2 for f in self.orders):
            raise InvalidDyerGraph('a Coxeter graph has every vertex weight equal to 2')

    @classmethod
    def from_dyer(cls, graph: DyerGraph) -> 'CoxeterGraph':
        return cls(graph.vertices, graph.orders, graph.edges)


@dataclass(frozen=True)
class DyerMatrix:
    entries: tuple[tuple[ExtNat, ...], ...]

    @classmethod
    def build(cls, rows: Sequence[Sequence]) -> 'DyerMatrix':
        return cls(tuple(tuple(ExtNat.parse(x) for x in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.entries]


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.errors

    def __bool__(self):
        return self.is_valid


@dataclass(frozen=True)
class IrreducibleType:
    """An irreducible spherical or affine Coxeter type, e.g. ``B`` with rank 4."""
    family: str
    rank: int
    parameter: Optional[int] = None
    affine: bool = False
    exponents: tuple[int, ...] = field(default=(), compare=False)

    @property
    def label(self) -> str:
        if self.family == 'cyclic':
            return 'Z' if self.parameter is None else f'C{self.parameter}'
        if self.family == 'I2':
            return f'I2({self.parameter})'
        if self.affine:
            return f'~{self.family}{self.rank}'
        return f'{self.family}{self.rank}'

    @property
    def coxeter_number(self) -> Optional[int]:
        return max(self.exponents) + 1 if self.exponents else None

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Component:
    vertices: tuple[str, ...]
    type: Optional[IrreducibleType] = None

    @property
    def label(self) -> str:
        return self.type.label if self.type is not None else 'nonclassified'


@dataclass(frozen=True)
class SphericalEuclideanVerdict:
    kind: VerdictKind
    components: tuple[Component, ...] = ()

    @property
    def is_spherical(self) -> bool:
        return self.kind == VerdictKind.SPHERICAL

    @property
    def is_euclidean(self) -> bool:
        return self.kind == VerdictKind.EUCLIDEAN

    @property
    def has_growth_rate_one(self) -> bool:
        return self.kind != VerdictKind.NEITHER
