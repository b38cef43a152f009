"""The order relation between Dyer graphs.

g <= g2 when some injective graph morphism sends every vertex to one of at
least the same weight and every edge to an edge of at least the same weight.
"""
from __future__ import annotations

import logging
from typing import Optional

from networkx.algorithms.isomorphism import GraphMatcher

from .conversions import ensure_valid
from .models import DyerGraph

logger = logging.getLogger(__name__)


def is_order_morphism(g: DyerGraph, g2: DyerGraph, phi: dict) -> bool:
    """Check a candidate vertex map ``phi`` (ids of g -> ids of g2)."""
    if set(phi) != set(g.vertices) or len(set(phi.values())) != len(phi):
        return False
    if not set(phi.values()) <= set(g2.vertices):
        return False
    for v in g.vertices:
        if not g.order(v) <= g2.order(phi[v]):
            return False
    for i, j, m in g.index_pairs():
        a, b = g2.index(phi[g.vertices[i]]), g2.index(phi[g.vertices[j]])
        if not g2.has_edge(a, b) or not m <= g2.weight(a, b):
            return False
    return True


def find_order_morphism(g: DyerGraph, g2: DyerGraph) -> Optional[dict]:
    """A witness for g <= g2, or None when there is none."""
    ensure_valid(g)
    ensure_valid(g2)
    if g.rank > g2.rank or len(g.edges) > len(g2.edges):
        return None
    identity = {v: v for v in g.vertices}
    if is_order_morphism(g, g2, identity):
        return identity

    matcher = GraphMatcher(
        g2.to_networkx(),
        g.to_networkx(),
        node_match=lambda big, small: small['f'] <= big['f'],
        edge_match=lambda big, small: small['m'] <= big['m'],
    )
    for mapping in matcher.subgraph_monomorphisms_iter():
        phi = {small: big for big, small in mapping.items()}
        logger.debug('order morphism found: %s', phi)
        return phi
    return None
