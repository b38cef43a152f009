"""Test corpora of Dyer graphs and the oracle sweeps run over them."""
from __future__ import annotations

import itertools
import logging
import random
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from graphs.classification import classify_dyer
from graphs.models import INF, DyerGraph, ExtNat
from series.growth import growth_series, series_coefficients
from words.enumeration import ball

from .models import SweepMismatch
from .rates import rate_from_series

logger = logging.getLogger(__name__)

VERTEX_WEIGHTS = (2, 3, 4, 5, INF)
EDGE_WEIGHTS = (3, 4, 5, INF)


def _edge_choices(fu: ExtNat, fv: ExtNat, edge_weights) -> list:
    """Weights an edge {u, v} may take, None meaning no edge."""
    if fu >= 3 or fv >= 3:
        return [None, INF]
    return [None] + [ExtNat.parse(m) for m in edge_weights]


def enumerate_dyer_graphs(n_max: int, vertex_weights: Sequence = VERTEX_WEIGHTS,
                          edge_weights: Sequence = EDGE_WEIGHTS, n_min: int = 1) -> Iterator[DyerGraph]:
    """Every valid marked Dyer graph on v1..vn, n_min <= n <= n_max, over the given weights."""
    vertex_weights = [ExtNat.parse(f) for f in vertex_weights]
    for n in range(n_min, n_max + 1):
        ids = [f'v{i + 1}' for i in range(n)]
        pairs = list(itertools.combinations(range(n), 2))
        for orders in itertools.product(vertex_weights, repeat=n):
            choices = [_edge_choices(orders[i], orders[j], edge_weights) for i, j in pairs]
            for weights in itertools.product(*choices):
                edges = [(ids[i], ids[j], m) for (i, j), m in zip(pairs, weights) if m is not None]
                yield DyerGraph.build(list(zip(ids, orders)), edges)


def random_dyer_graph(rng: random.Random, n: int, vertex_weights: Sequence = VERTEX_WEIGHTS,
                      edge_weights: Sequence = EDGE_WEIGHTS, edge_probability: float = 0.5) -> DyerGraph:
    ids = [f'v{i + 1}' for i in range(n)]
    orders = [ExtNat.parse(rng.choice(vertex_weights)) for _ in ids]
    edges = []
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < edge_probability:
            edges.append((ids[i], ids[j], rng.choice(_edge_choices(orders[i], orders[j], edge_weights)[1:])))
    return DyerGraph.build(list(zip(ids, orders)), edges)


def random_enlargement(rng: random.Random, g: DyerGraph, vertex_weights: Sequence = VERTEX_WEIGHTS,
                       edge_weights: Sequence = EDGE_WEIGHTS, extra_vertices: int = 0) -> DyerGraph:
    """A graph g2 with g <= g2 witnessed by the identity on the ids of g."""
    fresh = (f'x{i}' for i in itertools.count(1) if f'x{i}' not in g.vertices)
    ids = list(g.vertices) + list(itertools.islice(fresh, extra_vertices))
    orders = {v: f for v, f in zip(g.vertices, g.orders)}
    for v in ids:
        current = orders.get(v, ExtNat(2))
        larger = [ExtNat.parse(f) for f in vertex_weights if ExtNat.parse(f) >= current]
        orders[v] = rng.choice(larger) if v not in g.vertices or rng.random() < 0.5 else current

    weights = {frozenset((e.u, e.v)): e.m for e in g.edges}
    edges = []
    for u, v in itertools.combinations(ids, 2):
        allowed = _edge_choices(orders[u], orders[v], edge_weights)[1:]
        current = weights.get(frozenset((u, v)))
        if current is not None:
            larger = [m for m in allowed if m >= current]
            m = current if current in larger and rng.random() < 0.5 else rng.choice(larger)
        elif rng.random() < 0.25:
            m = rng.choice(allowed)
        else:
            continue
        edges.append((u, v, m))
    return DyerGraph.build([(v, orders[v]) for v in ids], edges)


def oracle_sweep(graphs: Iterable[DyerGraph], degree: int, budget: Optional[int] = None) -> list[SweepMismatch]:
    """Graphs whose recursion coefficients differ from ball enumeration."""
    mismatches = []
    count = 0
    for g in graphs:
        count += 1
        expected = ball(g, degree, budget=budget).a
        computed = series_coefficients(growth_series(g), degree).a
        if computed != expected:
            mismatches.append(SweepMismatch(g, f"series {computed} but ball {expected}"))
    logger.info('oracle sweep: %d graphs, %d mismatches', count, len(mismatches))
    return mismatches


def classification_sweep(graphs: Iterable[DyerGraph], tol=None,
                         margin: Fraction = Fraction(1, 10 ** 6)) -> list[SweepMismatch]:
    """Graphs where tau = 1 does not coincide with a spherical or Euclidean verdict.

    tau is taken from the denominator of the growth series only, so the
    classification is checked rather than assumed.
    """
    mismatches = []
    for g in graphs:
        verdict = classify_dyer(g)
        rate = rate_from_series(growth_series(g), tol)
        if verdict.has_growth_rate_one and not rate.is_one:
            mismatches.append(SweepMismatch(g, f"{verdict.kind.label} but tau >= {float(rate.tau_lower)}"))
        elif not verdict.has_growth_rate_one and not rate.tau_lower > 1 + margin:
            mismatches.append(SweepMismatch(g, f"neither, but tau_lower = {float(rate.tau_lower)}"))
    return mismatches
