"""Validation, the matrix/graph bijection and the induced Coxeter graph."""
from __future__ import annotations

import logging
from collections import Counter
from typing import Optional, Sequence

from core.exceptions import InvalidDyerGraph, InvalidDyerMatrix

from .models import (
    INF, TWO, CoxeterGraph, DyerGraph, DyerMatrix, ValidationReport,
)

logger = logging.getLogger(__name__)


def graph_problems(g: DyerGraph) -> list[str]:
    problems = []
    if len(g.orders) != len(g.vertices):
        problems.append(f"{len(g.vertices)} vertices but {len(g.orders)} vertex weights")
    for vertex, count in Counter(g.vertices).items():
        if count > 1:
            problems.append(f"vertex {vertex!r} is listed {count} times")

    known = set(g.vertices)
    order = dict(zip(g.vertices, g.orders))
    seen = Counter()
    for e in g.edges:
        missing = [x for x in (e.u, e.v) if x not in known]
        if missing:
            problems.append(f"edge {e.u}-{e.v} refers to unknown vertex {missing[0]!r}")
            continue
        if e.u == e.v:
            problems.append(f"loop at vertex {e.u!r}")
            continue
        seen[frozenset((e.u, e.v))] += 1
        if e.m < 3:
            problems.append(f"edge {e.u}-{e.v} has weight {e.m}; non-commuting edges need weight >= 3")
        heavy = [x for x in (e.u, e.v) if order[x] >= 3]
        if heavy and e.m.is_finite:
            problems.append(
                f"edge {e.u}-{e.v} has weight {e.m} but vertex {heavy[0]!r} has weight "
                f"{order[heavy[0]]}; such edges must have weight inf"
            )
    for pair, count in seen.items():
        if count > 1:
            u, v = sorted(pair)
            problems.append(f"edge {u}-{v} is listed {count} times")
    return problems


def validate_graph(g: DyerGraph) -> ValidationReport:
    return ValidationReport(tuple(graph_problems(g)))


def ensure_valid(g: DyerGraph) -> DyerGraph:
    problems = graph_problems(g)
    if problems:
        raise InvalidDyerGraph('; '.join(problems))
    return g


def matrix_problems(matrix: DyerMatrix) -> list[str]:
    n = matrix.n
    problems = []
    for i, row in enumerate(matrix.entries):
        if len(row) != n:
            problems.append(f"row {i + 1} has {len(row)} entries, expected {n}")
    if problems:
        return problems
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i, j] != matrix[j, i]:
                problems.append(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ")
    for i in range(n):
        if matrix[i, i] >= 3:
            for j in range(n):
                if j != i and matrix[i, j] not in (TWO, INF):
                    problems.append(
                        f"entry ({i + 1},{j + 1}) is {matrix[i, j]} but generator {i + 1} has order "
                        f"{matrix[i, i]}; it must be 2 or inf"
                    )
    return problems


def matrix_to_graph(matrix: DyerMatrix, vertex_ids: Optional[Sequence[str]] = None) -> DyerGraph:
    problems = matrix_problems(matrix)
    if problems:
        raise InvalidDyerMatrix('; '.join(problems))
    n = matrix.n
    ids = list(vertex_ids) if vertex_ids is not None else [f'v{i + 1}' for i in range(n)]
    if len(ids) != n:
        raise InvalidDyerMatrix(f"{len(ids)} vertex ids for a {n}x{n} matrix")
    edges = [
        (ids[i], ids[j], matrix[i, j])
        for i in range(n) for j in range(i + 1, n)
        if matrix[i, j] >= 3
    ]
    return DyerGraph.build([(ids[i], matrix[i, i]) for i in range(n)], edges)


def graph_to_matrix(g: DyerGraph) -> DyerMatrix:
    ensure_valid(g)
    n = g.rank
    return DyerMatrix(tuple(tuple(g.weight(i, j) for j in range(n)) for i in range(n)))


def partition_generators(g: DyerGraph) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    """Split the marking into V_2, V_p (finite order >= 3) and V_inf."""
    v2, vp, vinf = [], [], []
    for v, f in zip(g.vertices, g.orders):
        if f.is_infinite:
            vinf.append(v)
        elif f == 2:
            v2.append(v)
        else:
            vp.append(v)
    return tuple(v2), tuple(vp), tuple(vinf)


def _primed(vertex: str, taken: set) -> str:
    name = vertex + "'"
    while name in taken:
        name += "'"
    return name


def induced_coxeter_graph(g: DyerGraph) -> tuple[CoxeterGraph, dict[str, tuple[str, ...]]]:
    """The induced Coxeter graph Lambda and the generator map v -> v or v v'.

    Every vertex of weight >= 3 gets a primed partner joined only to it, by an
    edge whose weight is the vertex weight.
    """
    ensure_valid(g)
    _, vp, vinf = partition_generators(g)
    heavy = set(vp) | set(vinf)
    taken = set(g.vertices)
    partner = {}
    for v in g.vertices:
        if v in heavy:
            partner[v] = _primed(v, taken)
            taken.add(partner[v])

    vertices = list(g.vertices) + [partner[v] for v in g.vertices if v in partner]
    edges = [(e.u, e.v, e.m) for e in g.edges]
    edges += [(v, partner[v], g.order(v)) for v in g.vertices if v in partner]
    lam = DyerGraph.build([(v, 2) for v in vertices], edges)
    generator_map = {v: (v, partner[v]) if v in partner else (v,) for v in g.vertices}
    logger.debug('induced Coxeter graph has %d vertices and %d edges', lam.rank, len(lam.edges))
    return CoxeterGraph.from_dyer(lam), generator_map


def disjoint_union(g1: DyerGraph, g2: DyerGraph) -> DyerGraph:
    """Graph of the direct product: the two parts commute."""
    clash = set(g1.vertices) & set(g2.vertices)
    if clash:
        raise InvalidDyerGraph(f"vertex ids shared by both graphs: {sorted(clash)}")
    return DyerGraph(g1.vertices + g2.vertices, g1.orders + g2.orders, g1.edges + g2.edges)


