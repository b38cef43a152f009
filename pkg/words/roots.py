"""Coxeter groups through the reflection representation.

The reflection representation realises W(Lambda) on the span of the simple
roots with B(e_i, e_j) = -cos(pi / m_ij); it is faithful for every Coxeter
graph, and through the induced Coxeter graph it gives a matrix for every
element of D(g). When W is finite its root orbit is finite and W acts on it
faithfully, so each element is the permutation it induces on the roots. The
orbit is grown under a cap; if it does not close the group is infinite.
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np
from django.conf import settings

from core.exceptions import InvalidDyerGraph, RootBudgetExceeded
from graphs.conversions import induced_coxeter_graph
from graphs.models import CoxeterGraph, DyerGraph

from .enumeration import level_walk, ball_budget
from .models import GrowthTable, SyllabicWord

logger = logging.getLogger(__name__)

_MATCH = 1e-6


def bilinear_form(g: DyerGraph) -> np.ndarray:
    n = g.rank
    form = np.eye(n)
    for i, j, m in g.index_pairs():
        form[i, j] = form[j, i] = -1.0 if m.is_infinite else -np.cos(np.pi / m.value)
    return form


def root_system(g: DyerGraph, cap: Optional[int] = None) -> np.ndarray:
    """Roots in the simple-root basis, one per row, simple roots first."""
    if any(f != 2 for f in g.orders):
        raise InvalidDyerGraph('the root system is defined for Coxeter graphs only')
    cap = cap if cap is not None else settings.DYER_ROOT_CAP
    n = g.rank
    form = bilinear_form(g)
    roots = [row for row in np.eye(n)]
    found = np.eye(n)
    queue = list(range(n))
    while queue:
        k = queue.pop()
        alpha = roots[k]
        for i in range(n):
            beta = alpha.copy()
            beta[i] -= 2.0 * float(form[i] @ alpha)
            if np.abs(found - beta).max(axis=1).min() < _MATCH:
                continue
            roots.append(beta)
            found = np.vstack([found, beta])
            queue.append(len(roots) - 1)
            if len(roots) > cap:
                raise RootBudgetExceeded(f"root orbit exceeded {cap} roots; the group looks infinite")
    logger.debug('root system of rank %d has %d roots', n, len(roots))
    return found


def generator_permutations(g: DyerGraph, cap: Optional[int] = None) -> list[np.ndarray]:
    roots = root_system(g, cap)
    form = bilinear_form(g)
    perms = []
    for i in range(g.rank):
        images = roots - 2.0 * np.outer(roots @ form[i], np.eye(g.rank)[i])
        distance = np.abs(images[:, None, :] - roots[None, :, :]).max(axis=2)
        perms.append(distance.argmin(axis=1))
    return perms


def is_finite_coxeter(g: DyerGraph, cap: Optional[int] = None) -> bool:
    try:
        root_system(g, cap)
    except RootBudgetExceeded:
        return False
    return True


def coxeter_ball(g: DyerGraph, m_max: Optional[int] = None, budget: Optional[int] = None) -> GrowthTable:
    """Exact sphere sizes of a finite Coxeter group, walked on root permutations.

    Without ``m_max`` the walk runs until the group is exhausted.
    """
    if not isinstance(g, CoxeterGraph):
        g = CoxeterGraph.from_dyer(g)
    perms = [tuple(int(x) for x in p) for p in generator_permutations(g)]
    identity = tuple(range(len(perms[0]))) if perms else ()

    def step(x):
        for p in perms:
            yield tuple(x[k] for k in p)

    return level_walk(identity, step, m_max, ball_budget(budget), False)


def reflection_matrices(g: DyerGraph) -> list[np.ndarray]:
    """s_i acting on the simple-root basis, one matrix per generator."""
    form = bilinear_form(g)
    basis = np.eye(g.rank)
    return [basis - 2.0 * np.outer(basis[i], form[i]) for i in range(g.rank)]


class LinearDyerGroup:
    """D(g) as a matrix group: v goes to s_v, or to s_v s_v' when its order is at least 3."""

    def __init__(self, g: DyerGraph):
        lam, generator_map = induced_coxeter_graph(g)
        reflections = reflection_matrices(lam)
        self.dimension = lam.rank
        self.generators = []
        for v in g.vertices:
            image = np.eye(lam.rank)
            for u in generator_map[v]:
                image = image @ reflections[lam.index(u)]
            self.generators.append((image, np.linalg.inv(image)))

    def matrix(self, word: SyllabicWord) -> np.ndarray:
        out = np.eye(self.dimension)
        for gen, exp in word:
            forward, backward = self.generators[gen]
            out = out @ np.linalg.matrix_power(forward if exp > 0 else backward, abs(exp))
        return out

    def same_element(self, a: np.ndarray, b: np.ndarray) -> bool:
        return bool(np.allclose(a, b, rtol=1e-9, atol=_MATCH))
