import random
from itertools import combinations, permutations, product

import networkx as nx
from django.test import SimpleTestCase, tag

from analysis.sweep import enumerate_dyer_graphs, random_dyer_graph, random_enlargement
from core.exceptions import InvalidDyerGraph, InvalidDyerMatrix, InvalidWeight
from words.roots import is_finite_coxeter

from .classification import classify_coxeter, classify_dyer, match_component
from .conversions import (
    disjoint_union, graph_to_matrix, induced_coxeter_graph, matrix_to_graph, partition_generators,
    validate_graph,
)
from .models import INF, CoxeterGraph, DyerGraph, DyerMatrix, ExtNat, VerdictKind
from .morphisms import find_order_morphism, is_order_morphism
from .serializers import dump_graph, dump_matrix, load_graph, load_matrix


def graph(orders, edges=()):
    return DyerGraph.build([(f'v{i + 1}', f) for i, f in enumerate(orders)],
                           [(f'v{u}', f'v{v}', m) for u, v, m in edges])


def path(weights):
    return graph([2] * (len(weights) + 1), [(i + 1, i + 2, m) for i, m in enumerate(weights)])


def example_graph(k=4, p=5):
    """f = (inf, 2, 2, k) with edges v1-v2: inf, v2-v3: p, v3-v4: inf."""
    return graph(['inf', 2, 2, k], [(1, 2, 'inf'), (2, 3, p), (3, 4, 'inf')])


class ExtNatTests(SimpleTestCase):
    def test_ordering(self):
        self.assertLess(ExtNat(2), ExtNat(3))
        self.assertLess(ExtNat(10 ** 9), INF)
        self.assertEqual(ExtNat(3), 3)
        self.assertGreater(INF, 10 ** 12)

    def test_parse(self):
        self.assertIs(ExtNat.parse('inf'), INF)
        self.assertEqual(ExtNat.parse('7'), ExtNat(7))
        self.assertEqual(ExtNat.parse(4).to_json(), 4)
        self.assertEqual(INF.to_json(), 'inf')

    def test_rejects_small_and_odd_values(self):
        for raw in (0, 1, -3, True, 2.5, 'seven'):
            with self.subTest(raw=raw):
                with self.assertRaises(InvalidWeight):
                    ExtNat.parse(raw)


class ValidationTests(SimpleTestCase):
    def test_example_graph_is_valid(self):
        self.assertTrue(validate_graph(example_graph()).is_valid)

    def test_single_vertex(self):
        self.assertTrue(validate_graph(graph([2])))

    def test_heavy_vertex_forces_infinite_edges(self):
        report = validate_graph(graph([3, 2], [(1, 2, 4)]))
        self.assertFalse(report.is_valid)
        self.assertIn('must have weight inf', report.errors[0])

    def test_every_problem_reported(self):
        g = DyerGraph(('a', 'a', 'b'), (ExtNat(2), ExtNat(2), ExtNat(2)), ())
        self.assertEqual(len(validate_graph(g).errors), 1)
        g = DyerGraph.build([('a', 2), ('b', 2)], [('a', 'b', 2), ('a', 'c', 3), ('a', 'a', 3)])
        self.assertEqual(len(validate_graph(g).errors), 3)


class MatrixTests(SimpleTestCase):
    def test_commuting_pair(self):
        g = matrix_to_graph(DyerMatrix.build([[2, 2], [2, 2]]))
        self.assertEqual(g.edges, ())
        self.assertEqual(g.vertices, ('v1', 'v2'))

    def test_single_edge(self):
        g = matrix_to_graph(DyerMatrix.build([[2, 7], [7, 2]]))
        self.assertEqual([(e.u, e.v, e.m) for e in g.edges], [('v1', 'v2', 7)])

    def test_example_matrix(self):
        matrix = DyerMatrix.build([
            ['inf', 'inf', 2, 2],
            ['inf', 2, 5, 2],
            [2, 5, 2, 'inf'],
            [2, 2, 'inf', 4],
        ])
        self.assertEqual(matrix_to_graph(matrix), example_graph())
        self.assertEqual(graph_to_matrix(example_graph()), matrix)

    def test_invalid_matrices(self):
        for rows in ([[2, 3], [4, 2]], [[3, 4], [4, 2]], [[2, 2], [2]]):
            with self.subTest(rows=rows):
                with self.assertRaises(InvalidDyerMatrix):
                    matrix_to_graph(DyerMatrix.build(rows))

    def test_round_trip(self):
        rng = random.Random(11)
        weights = [2, 3, 4, 5, 7, INF]
        for _ in range(300):
            n = rng.randint(1, 8)
            orders = [rng.choice(weights) for _ in range(n)]
            edges = []
            for i in range(n):
                for j in range(i + 1, n):
                    if rng.random() < 0.4:
                        heavy = orders[i] >= 3 or orders[j] >= 3
                        edges.append((i + 1, j + 1, INF if heavy else rng.choice(weights[1:])))
            g = graph(orders, edges)
            self.assertEqual(matrix_to_graph(graph_to_matrix(g)), g)
            matrix = graph_to_matrix(g)
            self.assertEqual(graph_to_matrix(matrix_to_graph(matrix)), matrix)


class PartitionTests(SimpleTestCase):
    def test_example_graph(self):
        self.assertEqual(partition_generators(example_graph()), (('v2', 'v3'), ('v4',), ('v1',)))

    def test_coxeter_graph(self):
        self.assertEqual(partition_generators(path([3, 3])), (('v1', 'v2', 'v3'), (), ()))

    def test_heavy_only(self):
        self.assertEqual(partition_generators(graph([3, 5, 'inf'])), ((), ('v1', 'v2'), ('v3',)))


class InducedCoxeterGraphTests(SimpleTestCase):
    def test_example_graph(self):
        lam, generator_map = induced_coxeter_graph(example_graph(k=4))
        self.assertIsInstance(lam, CoxeterGraph)
        self.assertEqual(lam.vertices, ('v1', 'v2', 'v3', 'v4', "v1'", "v4'"))
        edges = {(e.u, e.v, e.m) for e in lam.edges}
        self.assertEqual(edges, {
            ('v1', 'v2', INF), ('v2', 'v3', ExtNat(5)), ('v3', 'v4', INF),
            ('v1', "v1'", INF), ('v4', "v4'", ExtNat(4)),
        })
        self.assertEqual(generator_map['v1'], ('v1', "v1'"))
        self.assertEqual(generator_map['v2'], ('v2',))

    def test_coxeter_graph_unchanged(self):
        g = path([3, 4])
        lam, generator_map = induced_coxeter_graph(g)
        self.assertEqual((lam.vertices, lam.edges), (g.vertices, g.edges))
        self.assertEqual(generator_map, {v: (v,) for v in g.vertices})

    def test_single_vertex(self):
        lam, generator_map = induced_coxeter_graph(graph([5]))
        self.assertEqual([(e.u, e.v, e.m) for e in lam.edges], [('v1', "v1'", 5)])
        self.assertEqual(generator_map, {'v1': ('v1', "v1'")})

    def test_primed_name_clash(self):
        g = DyerGraph.build([('a', 3), ("a'", 2)])
        lam, generator_map = induced_coxeter_graph(g)
        self.assertEqual(generator_map['a'], ('a', "a''"))

    def test_counts(self):
        g = graph([3, 'inf', 2, 4], [(1, 2, 'inf'), (2, 3, 'inf')])
        lam, _ = induced_coxeter_graph(g)
        self.assertEqual(lam.rank, 4 + 3)
        self.assertEqual(len(lam.edges), 2 + 3)
        for v in lam.vertices[4:]:
            self.assertEqual(lam.degree(lam.index(v)), 1)


class ClassificationTests(SimpleTestCase):
    def label(self, g):
        return [c.label for c in classify_coxeter(g).components]

    def test_path_of_threes(self):
        verdict = classify_coxeter(path([3, 3]))
        self.assertEqual(verdict.kind, VerdictKind.SPHERICAL)
        self.assertEqual(self.label(path([3, 3])), ['A3'])

    def test_infinite_edge(self):
        verdict = classify_coxeter(path(['inf']))
        self.assertEqual(verdict.kind, VerdictKind.EUCLIDEAN)
        self.assertEqual(self.label(path(['inf'])), ['~A1'])

    def test_triangles(self):
        self.assertEqual(classify_coxeter(graph([2, 2, 2], [(1, 2, 3), (2, 3, 3), (1, 3, 3)])).kind,
                         VerdictKind.EUCLIDEAN)
        self.assertEqual(classify_coxeter(path([3, 7])).kind, VerdictKind.NEITHER)

    def test_spherical_templates(self):
        cases = {
            'B4': path([3, 3, 4]),
            'F4': path([3, 4, 3]),
            'H3': path([5, 3]),
            'H4': path([5, 3, 3]),
            'I2(7)': path([7]),
            'D5': graph([2] * 5, [(1, 2, 3), (2, 3, 3), (3, 4, 3), (3, 5, 3)]),
            'E6': graph([2] * 6, [(1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (3, 6, 3)]),
            'E8': graph([2] * 8, [(1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (6, 7, 3), (3, 8, 3)]),
        }
        for label, g in cases.items():
            with self.subTest(label=label):
                self.assertEqual(self.label(g), [label])
                self.assertTrue(classify_coxeter(g).is_spherical)

    def test_affine_templates(self):
        cases = {
            '~B3': graph([2] * 4, [(1, 2, 3), (2, 3, 4), (2, 4, 3)]),
            '~C3': path([4, 3, 4]),
            '~D4': graph([2] * 5, [(1, 3, 3), (2, 3, 3), (3, 4, 3), (3, 5, 3)]),
            '~D5': graph([2] * 6, [(1, 3, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (4, 6, 3)]),
            '~E6': graph([2] * 7, [(1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (3, 6, 3), (6, 7, 3)]),
            '~F4': path([3, 3, 4, 3]),
            '~G2': path([3, 6]),
        }
        for label, g in cases.items():
            with self.subTest(label=label):
                self.assertEqual(self.label(g), [label])
                self.assertTrue(classify_coxeter(g).is_euclidean)

    def test_exponents(self):
        e8 = match_component(graph([2] * 8, [(1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3),
                                              (6, 7, 3), (3, 8, 3)]).to_networkx())
        self.assertEqual(e8.exponents, (1, 7, 11, 13, 17, 19, 23, 29))
        self.assertEqual(e8.coxeter_number, 30)

    def test_dyer_examples(self):
        self.assertEqual(classify_dyer(graph([3, 'inf'])).kind, VerdictKind.SPHERICAL)
        self.assertEqual(classify_dyer(graph([3, 3], [(1, 2, 'inf')])).kind, VerdictKind.NEITHER)
        self.assertEqual(classify_dyer(graph([2, 2, 4], [(1, 2, 'inf')])).kind, VerdictKind.EUCLIDEAN)
        self.assertEqual(classify_dyer(DyerGraph.build([])).kind, VerdictKind.SPHERICAL)

    def test_heavy_vertex_with_coxeter_neighbour(self):
        self.assertEqual(classify_dyer(graph([3, 2], [(1, 2, 'inf')])).kind, VerdictKind.NEITHER)

    def test_parabolic_heredity(self):
        g = graph([2, 2, 2, 3], [(1, 2, 3), (2, 3, 4)])
        self.assertTrue(classify_dyer(g).is_spherical)
        for mask in range(1, 16):
            sub = g.full_subgraph(i for i in range(4) if mask >> i & 1)
            self.assertTrue(classify_dyer(sub).is_spherical)

    def test_invalid_graph_rejected(self):
        with self.assertRaises(InvalidDyerGraph):
            classify_dyer(graph([3, 2], [(1, 2, 4)]))


class OrderMorphismTests(SimpleTestCase):
    def test_reflexive(self):
        g = example_graph()
        self.assertEqual(find_order_morphism(g, g), {v: v for v in g.vertices})

    def test_cyclic_groups(self):
        self.assertEqual(find_order_morphism(graph([3]), DyerGraph.build([('w', 5)])), {'v1': 'w'})

    def test_heavier_edge_blocks(self):
        self.assertIsNone(find_order_morphism(path([7]), path([3])))

    def test_relabelled_target(self):
        g = path([3, 4])
        g2 = DyerGraph.build([('a', 2), ('b', 2), ('c', 2), ('d', 2)],
                             [('d', 'c', 5), ('c', 'b', 4), ('a', 'b', 3)])
        phi = find_order_morphism(g, g2)
        self.assertIsNotNone(phi)
        self.assertTrue(is_order_morphism(g, g2, phi))

    def test_transitive(self):
        g1, g2, g3 = path([3]), path([4, 3]), graph([2, 3, 2], [(1, 2, 'inf'), (1, 3, 5)])
        phi = find_order_morphism(g1, g2)
        psi = find_order_morphism(g2, g3)
        self.assertIsNotNone(phi)
        self.assertIsNotNone(psi)
        self.assertTrue(is_order_morphism(g1, g3, {v: psi[phi[v]] for v in g1.vertices}))


class SerializerTests(SimpleTestCase):
    def test_graph_json(self):
        data = {
            'vertices': [{'id': 'v1', 'order': 'inf'}, {'id': 'v2', 'order': 2}],
            'edges': [{'u': 'v1', 'v': 'v2', 'm': 'inf'}],
        }
        g = load_graph(data)
        self.assertEqual(g, graph(['inf', 2], [(1, 2, 'inf')]))
        self.assertEqual(dump_graph(g), data)

    def test_missing_edge_weight(self):
        with self.assertRaises(InvalidDyerGraph):
            load_graph({'vertices': [{'id': 'a', 'order': 2}, {'id': 'b', 'order': 2}],
                        'edges': [{'u': 'a', 'v': 'b'}]})

    def test_unknown_vertex_and_bad_weight(self):
        with self.assertRaises(InvalidDyerGraph):
            load_graph({'vertices': [{'id': 'a', 'order': 2}], 'edges': [{'u': 'a', 'v': 'z', 'm': 3}]})
        with self.assertRaises(InvalidDyerGraph):
            load_graph({'vertices': [{'id': 'a', 'order': 1}]})

    def test_non_strict_load(self):
        g = load_graph({'vertices': [{'id': 'a', 'order': 3}, {'id': 'b', 'order': 2}],
                        'edges': [{'u': 'a', 'v': 'b', 'm': 4}]}, strict=False)
        self.assertFalse(validate_graph(g).is_valid)

    def test_matrix_json(self):
        matrix = load_matrix([[2, 'inf'], ['inf', 2]])
        self.assertEqual(dump_matrix(matrix), {'entries': [[2, 'inf'], ['inf', 2]]})

    def test_disjoint_union(self):
        g = disjoint_union(path([3]), DyerGraph.build([('w', 'inf')]))
        self.assertEqual(g.vertices, ('v1', 'v2', 'w'))
        with self.assertRaises(InvalidDyerGraph):
            disjoint_union(path([3]), path([3]))


def coxeter_graphs(n_max, weights):
    """Connected Coxeter graphs on at most ``n_max`` vertices, one per isomorphism class."""
    seen = set()
    for n in range(1, n_max + 1):
        pairs = list(combinations(range(n), 2))
        for choice in product((None, *weights), repeat=len(pairs)):
            edges = [(i, j, m) for (i, j), m in zip(pairs, choice) if m is not None]
            g = graph([2] * n, [(i + 1, j + 1, m) for i, j, m in edges])
            if not nx.is_connected(g.to_networkx()):
                continue
            key = min(
                tuple(sorted((min(p[i], p[j]), max(p[i], p[j]), m) for i, j, m in edges))
                for p in permutations(range(n))
            )
            if (n, key) not in seen:
                seen.add((n, key))
                yield g


def renamed(g, names):
    return DyerGraph.build([(names[v], f) for v, f in zip(g.vertices, g.orders)],
                           [(names[e.u], names[e.v], e.m) for e in g.edges])


@tag('slow')
class FiniteCoxeterGroupTests(SimpleTestCase):
    def test_spherical_iff_root_system_is_finite(self):
        graphs = list(coxeter_graphs(4, (3, 4, 5, 6)))
        spherical = 0
        for g in graphs:
            with self.subTest(edges=g.edges):
                verdict = classify_coxeter(g)
                self.assertEqual(verdict.is_spherical, is_finite_coxeter(g, cap=400))
                spherical += verdict.is_spherical
        # A1; A2 B2 H2 G2; A3 B3 H3; A4 B4 D4 F4 H4
        self.assertEqual(spherical, 13)


class CorpusTests(SimpleTestCase):
    def test_classification_is_hereditary(self):
        for g in enumerate_dyer_graphs(3):
            verdict = classify_dyer(g)
            if not verdict.has_growth_rate_one:
                continue
            for mask in range(1, 2 ** g.rank - 1):
                sub = classify_dyer(g.full_subgraph(i for i in range(g.rank) if mask >> i & 1))
                with self.subTest(graph=g, mask=mask):
                    self.assertTrue(sub.has_growth_rate_one)
                    if verdict.is_spherical:
                        self.assertTrue(sub.is_spherical)

    def test_order_morphisms_compose(self):
        graphs = list(enumerate_dyer_graphs(2, (2, 3, 'inf'), (3, 'inf')))
        below = {
            (a, b): find_order_morphism(graphs[a], graphs[b])
            for a in range(len(graphs)) for b in range(len(graphs))
        }
        for a in range(len(graphs)):
            self.assertIsNotNone(below[a, a])
            for b in range(len(graphs)):
                if below[a, b] is None:
                    continue
                for c in range(len(graphs)):
                    if below[b, c] is None:
                        continue
                    with self.subTest(a=a, b=b, c=c):
                        phi, psi = below[a, b], below[b, c]
                        composite = {v: psi[phi[v]] for v in graphs[a].vertices}
                        self.assertTrue(is_order_morphism(graphs[a], graphs[c], composite))
                        self.assertIsNotNone(below[a, c])

    def test_chained_enlargements(self):
        rng = random.Random(17)
        for _ in range(40):
            g1 = random_dyer_graph(rng, rng.randint(1, 3))
            g2 = random_enlargement(rng, g1, extra_vertices=rng.randint(0, 1))
            g3 = random_enlargement(rng, g2, extra_vertices=rng.randint(0, 1))
            shuffled = list(g3.vertices)
            rng.shuffle(shuffled)
            g3 = renamed(g3, {v: f'w{shuffled.index(v)}' for v in g3.vertices})
            phi = find_order_morphism(g1, g2)
            psi = find_order_morphism(g2, g3)
            with self.subTest(g1=g1, g2=g2, g3=g3):
                self.assertIsNotNone(phi)
                self.assertIsNotNone(psi)
                self.assertTrue(is_order_morphism(g1, g3, {v: psi[phi[v]] for v in g1.vertices}))
                self.assertIsNotNone(find_order_morphism(g1, g3))
