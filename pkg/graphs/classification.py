"""Spherical / Euclidean classification by matching irreducible Coxeter types.

A connected Coxeter graph is matched against the standard spherical list
(A, B, D, E6-8, F4, H3, H4, I2(m)) and the affine list (~A, ~B, ~C, ~D,
~E6-8, ~F4, ~G2). Anything else is reported as nonclassified.
"""
from __future__ import annotations

import logging
from typing import Optional

import networkx as nx

from .conversions import ensure_valid, partition_generators
from .models import (
    Component, CoxeterGraph, DyerGraph, IrreducibleType, SphericalEuclideanVerdict, VerdictKind,
)

logger = logging.getLogger(__name__)


def spherical_type(family: str, rank: int, parameter: Optional[int] = None) -> IrreducibleType:
    if family == 'A':
        exponents = tuple(range(1, rank + 1))
    elif family == 'B':
        exponents = tuple(range(1, 2 * rank, 2))
    elif family == 'D':
        exponents = tuple(range(1, 2 * rank - 2, 2)) + (rank - 1,)
    elif family == 'I2':
        exponents = (1, parameter - 1)
    else:
        exponents = _EXCEPTIONAL_EXPONENTS[(family, rank)]
    return IrreducibleType(family, rank, parameter, affine=False, exponents=tuple(sorted(exponents)))


def affine_type(family: str, rank: int) -> IrreducibleType:
    """``rank`` is the affine index: ~A_n has n + 1 vertices."""
    return IrreducibleType(family, rank, affine=True)


_EXCEPTIONAL_EXPONENTS = {
    ('E', 6): (1, 4, 5, 7, 8, 11),
    ('E', 7): (1, 5, 7, 9, 11, 13, 17),
    ('E', 8): (1, 7, 11, 13, 17, 19, 23, 29),
    ('F', 4): (1, 5, 7, 11),
    ('H', 3): (1, 5, 9),
    ('H', 4): (1, 11, 19, 29),
}

# Star-shaped simply laced trees, keyed by sorted arm lengths.
_STARS = {
    (1, 2, 2): spherical_type('E', 6),
    (1, 2, 3): spherical_type('E', 7),
    (1, 2, 4): spherical_type('E', 8),
    (2, 2, 2): affine_type('E', 6),
    (1, 3, 3): affine_type('E', 7),
    (1, 2, 5): affine_type('E', 8),
}


def _path_order(graph: nx.Graph) -> list:
    ends = [v for v, d in graph.degree() if d == 1]
    start = min(ends, key=str)
    return list(nx.dfs_preorder_nodes(graph, start))


def _weights_along(graph: nx.Graph, path: list) -> list:
    return [graph.edges[a, b]['m'] for a, b in zip(path, path[1:])]


def _arms(graph: nx.Graph, centre) -> list[list]:
    """Vertex lists of the arms hanging off ``centre``, nearest vertex first."""
    arms = []
    for start in graph.neighbors(centre):
        arm, previous, current = [start], centre, start
        while graph.degree(current) == 2:
            nxt = next(v for v in graph.neighbors(current) if v != previous)
            previous, current = current, nxt
            arm.append(current)
        arms.append(arm)
    return arms


def _match_path(weights: list) -> Optional[IrreducibleType]:
    n = len(weights) + 1
    heavy = [(i, w) for i, w in enumerate(weights) if w != 3]
    if not heavy:
        return spherical_type('A', n)
    if len(heavy) == 1:
        i, w = heavy[0]
        at_end = i in (0, len(weights) - 1)
        if w == 4:
            if at_end:
                return spherical_type('B', n)
            if n == 4:
                return spherical_type('F', 4)
            if n == 5 and i in (1, 2):
                return affine_type('F', 4)
            return None
        if w == 5 and at_end and n in (3, 4):
            return spherical_type('H', n)
        if w == 6 and n == 3:
            return affine_type('G', 2)
        return None
    if len(heavy) == 2 and n >= 3:
        (i, w), (j, x) = heavy
        if w == x == 4 and i == 0 and j == len(weights) - 1:
            return affine_type('C', n - 1)
    return None


def _match_tree(graph: nx.Graph) -> Optional[IrreducibleType]:
    n = graph.number_of_nodes()
    degrees = dict(graph.degree())
    branch = [v for v, d in degrees.items() if d >= 3]
    weights = {frozenset(e): graph.edges[e]['m'] for e in graph.edges}
    heavy = {e: w for e, w in weights.items() if w != 3}

    if not branch:
        return _match_path(_weights_along(graph, _path_order(graph)))

    if any(degrees[v] > 4 for v in branch):
        return None
    if len(branch) == 1 and degrees[branch[0]] == 4:
        if n == 5 and not heavy:
            return affine_type('D', 4)
        return None
    if len(branch) == 1:
        centre = branch[0]
        arms = _arms(graph, centre)
        lengths = tuple(sorted(len(a) for a in arms))
        if not heavy:
            if lengths[:2] == (1, 1):
                return spherical_type('D', n)
            return _STARS.get(lengths)
        # ~B_n: fork of two short arms, the 4-edge ends the remaining arm.
        if len(heavy) != 1 or lengths[:2] != (1, 1):
            return None
        (e, w), = heavy.items()
        if w != 4:
            return None
        for k, arm in enumerate(arms):
            last = frozenset((arm[-2] if len(arm) > 1 else centre, arm[-1]))
            others = [len(a) for a in arms[:k] + arms[k + 1:]]
            if e == last and others == [1, 1]:
                return affine_type('B', n - 1)
        return None
    if len(branch) == 2 and not heavy:
        # ~D_n: two forks joined by a path, each fork holding two leaves.
        for centre in branch:
            leaves = [v for v in graph.neighbors(centre) if degrees[v] == 1]
            if degrees[centre] != 3 or len(leaves) != 2:
                return None
        if n >= 6:
            return affine_type('D', n - 1)
    return None


def match_component(graph: nx.Graph) -> Optional[IrreducibleType]:
    """Identify a connected Coxeter graph (edge attribute ``m``)."""
    n = graph.number_of_nodes()
    if n == 1:
        return spherical_type('A', 1)
    infinite = [e for e in graph.edges if graph.edges[e]['m'].is_infinite]
    if infinite:
        return affine_type('A', 1) if n == 2 and graph.number_of_edges() == 1 else None
    if n == 2:
        m = graph.edges[next(iter(graph.edges))]['m'].value
        if m == 3:
            return spherical_type('A', 2)
        if m == 4:
            return spherical_type('B', 2)
        return spherical_type('I2', 2, m)
    if nx.is_tree(graph):
        return _match_tree(graph)
    if all(d == 2 for _, d in graph.degree()) and all(graph.edges[e]['m'] == 3 for e in graph.edges):
        return affine_type('A', n - 1)
    return None


def _verdict(components: list[Component]) -> SphericalEuclideanVerdict:
    types = [c.type for c in components]
    if all(t is not None and not t.affine for t in types):
        kind = VerdictKind.SPHERICAL
    elif all(t is not None for t in types):
        kind = VerdictKind.EUCLIDEAN
    else:
        kind = VerdictKind.NEITHER
    return SphericalEuclideanVerdict(kind, tuple(components))


def coxeter_components(g: DyerGraph) -> list[Component]:
    graph = g.to_networkx()
    position = {v: i for i, v in enumerate(g.vertices)}
    components = []
    for nodes in nx.connected_components(graph):
        ordered = tuple(sorted(nodes, key=position.__getitem__))
        components.append(Component(ordered, match_component(graph.subgraph(nodes))))
    components.sort(key=lambda c: position[c.vertices[0]])
    return components


def classify_coxeter(g: CoxeterGraph) -> SphericalEuclideanVerdict:
    if not isinstance(g, CoxeterGraph):
        g = CoxeterGraph.from_dyer(g)
    return _verdict(coxeter_components(g))


def classify_dyer(g: DyerGraph) -> SphericalEuclideanVerdict:
    """Spherical/Euclidean iff every vertex of weight >= 3 is isolated and the
    weight-2 part is a spherical/Euclidean Coxeter graph."""
    ensure_valid(g)
    return dyer_verdict(g)


def cyclic_type(order) -> IrreducibleType:
    return IrreducibleType('cyclic', 1, order.value)


def dyer_verdict(g: DyerGraph) -> SphericalEuclideanVerdict:
    """``classify_dyer`` for a graph already known to be valid."""
    v2, _, _ = partition_generators(g)
    heavy = [i for i, f in enumerate(g.orders) if f >= 3]
    cyclic = tuple(Component((g.vertices[i],), cyclic_type(g.orders[i])) for i in heavy)
    coxeter_part = CoxeterGraph.from_dyer(g.full_subgraph(g.index(v) for v in v2))
    verdict = classify_coxeter(coxeter_part)
    if any(g.degree(i) > 0 for i in heavy):
        logger.debug('vertex of weight >= 3 carries an edge; %s is neither spherical nor Euclidean', g.vertices)
        return SphericalEuclideanVerdict(VerdictKind.NEITHER, verdict.components + cyclic)
    return SphericalEuclideanVerdict(verdict.kind, verdict.components + cyclic)
