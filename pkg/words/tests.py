import random
from itertools import permutations

import numpy as np
from django.test import SimpleTestCase, tag

from analysis.sweep import enumerate_dyer_graphs
from core.exceptions import (
    BallBudgetExceeded, ClosureBudgetExceeded, InvalidWord, RankMismatch,
)
from graphs.classification import classify_dyer
from graphs.conversions import induced_coxeter_graph
from graphs.models import INF, DyerGraph, ExtNat
from series.growth import growth_series

from .enumeration import ball, group_order, marking_agreement_radius, subgroup_ball
from .models import IDENTITY, NormalForm, Syllable, SyllabicWord, canonical_exponent
from .parsing import format_word, parse_word
from .rewriting import (
    Rewriter, apply_type1, apply_type2, compress, inverse, normal_form, product, word_length,
)
from .roots import LinearDyerGroup, coxeter_ball, is_finite_coxeter
from .serializers import dump_word, load_word


def graph(orders, edges=()):
    return DyerGraph.build([(f'v{i + 1}', f) for i, f in enumerate(orders)],
                           [(f'v{u}', f'v{v}', m) for u, v, m in edges])


def word(*pairs):
    return SyllabicWord.of(pairs)


D_INFTY = graph([2, 2], [(1, 2, 'inf')])
F2 = graph(['inf', 'inf'], [(1, 2, 'inf')])
A2 = graph([2, 2], [(1, 2, 3)])
A3 = graph([2, 2, 2], [(1, 2, 3), (2, 3, 3)])
TRIANGLE_237 = graph([2, 2, 2], [(1, 2, 3), (2, 3, 7)])
TRIANGLE_238 = graph([2, 2, 2], [(1, 2, 3), (2, 3, 8)])


class CanonicalExponentTests(SimpleTestCase):
    def test_least_absolute_residue(self):
        self.assertEqual(canonical_exponent(4, ExtNat(5)), -1)
        self.assertEqual(canonical_exponent(3, ExtNat(5)), -2)
        self.assertEqual(canonical_exponent(3, ExtNat(3)), 0)

    def test_tie_goes_positive(self):
        self.assertEqual(canonical_exponent(2, ExtNat(4)), 2)
        self.assertEqual(canonical_exponent(-2, ExtNat(4)), 2)
        self.assertEqual(canonical_exponent(-1, ExtNat(2)), 1)

    def test_infinite_order_keeps_exponent(self):
        self.assertEqual(canonical_exponent(-7, INF), -7)


class CompressTests(SimpleTestCase):
    def setUp(self):
        self.g = graph(['inf', 'inf', 'inf'])

    def test_runs_become_syllables(self):
        letters = [(0, 1), (0, 1), (0, 1), (1, 1), (1, -1), (1, -1), (2, -1), (2, -1)]
        self.assertEqual(compress(self.g, letters), word((0, 3), (1, -1), (2, -2)))

    def test_empty_and_cancelling_words(self):
        self.assertEqual(compress(self.g, []), IDENTITY)
        self.assertEqual(compress(self.g, [(0, 1), (0, -1)]), IDENTITY)

    def test_cancellation_joins_neighbours(self):
        self.assertEqual(compress(self.g, [(0, 1), (1, 1), (1, -1), (0, 1)]), word((0, 2)))

    def test_generator_out_of_range(self):
        with self.assertRaises(InvalidWord):
            compress(self.g, [(3, 1)])


class ElementaryOperationTests(SimpleTestCase):
    def test_type1_merges_same_generator(self):
        self.assertEqual(apply_type1(graph(['inf']), word((0, 2), (0, 1)), 0), word((0, 3)))

    def test_type1_cancels_to_identity(self):
        self.assertEqual(apply_type1(graph([3]), word((0, 2), (0, 1)), 0), IDENTITY)

    def test_type1_needs_one_generator(self):
        self.assertIsNone(apply_type1(graph([2, 2]), word((0, 1), (1, 1)), 0))

    def test_type2_swaps_commuting_syllables(self):
        g = graph(['inf', 'inf'])
        self.assertEqual(apply_type2(g, word((0, 3), (1, -2)), 0), word((1, -2), (0, 3)))

    def test_type2_braid(self):
        self.assertEqual(apply_type2(A2, word((0, 1), (1, 1), (0, 1)), 0), word((1, 1), (0, 1), (1, 1)))

    def test_type2_braid_needs_full_block(self):
        self.assertIsNone(apply_type2(A2, word((0, 1), (1, 1)), 0))

    def test_type2_never_applies_to_free_pairs(self):
        self.assertIsNone(apply_type2(D_INFTY, word((0, 1), (1, 1), (0, 1)), 0))

    def test_type2_preserves_degree_and_exponent_sum(self):
        rewriter = Rewriter(TRIANGLE_237)
        w = tuple(Syllable(g, 1) for g in (1, 2) * 4)
        for pos in range(len(w) - 1):
            result = rewriter.type2(w, pos)
            if result is not None:
                self.assertEqual(len(result), len(w))
                self.assertEqual(sum(abs(s.exp) for s in result), len(w))


class NormalFormTests(SimpleTestCase):
    def test_identity(self):
        nf = normal_form(A2, IDENTITY)
        self.assertEqual((nf.word, nf.syllabic_length, nf.word_length), (IDENTITY, 0, 0))

    def test_braid_class_minimum(self):
        nf = normal_form(A2, word((1, 1), (0, 1), (1, 1)))
        self.assertEqual(nf.word, word((0, 1), (1, 1), (0, 1)))
        self.assertEqual((nf.syllabic_length, nf.word_length), (3, 3))

    def test_infinite_dihedral_reduction(self):
        nf = normal_form(D_INFTY, word((0, 1), (1, 1), (0, 1), (0, 1), (1, 1)))
        self.assertEqual(nf.word, word((0, 1)))
        self.assertEqual((nf.syllabic_length, nf.word_length), (1, 1))

    def test_commuting_syllables_sorted(self):
        g = graph([3, 'inf'])
        self.assertEqual(normal_form(g, word((1, -2), (0, 1))).word, word((0, 1), (1, -2)))

    def test_reduction_needs_a_braid_first(self):
        # s1 s2 s1 s2 in A2 is s2 s1 s2 s2 = s2 s1.
        nf = normal_form(A2, word((0, 1), (1, 1), (0, 1), (1, 1)))
        self.assertEqual(nf.word, word((1, 1), (0, 1)))

    def test_closure_budget(self):
        with self.assertRaises(ClosureBudgetExceeded):
            normal_form(graph(['inf', 'inf']), word((1, 1), (0, 1)), budget=1)

    def test_is_reduced(self):
        rewriter = Rewriter(A2)
        self.assertTrue(rewriter.is_reduced(word((0, 1), (1, 1), (0, 1))))
        self.assertFalse(rewriter.is_reduced(word((0, 1), (1, 1), (0, 1), (1, 1))))


class WordLengthTests(SimpleTestCase):
    def test_single_generator(self):
        self.assertEqual(word_length(A3, word((2, 1))), 1)

    def test_minimal_residue(self):
        self.assertEqual(word_length(graph([5]), word((0, 4))), 1)

    def test_triangle_relator(self):
        relator = SyllabicWord(tuple(Syllable(g, 1) for g in (1, 2) * 7))
        self.assertEqual(word_length(TRIANGLE_237, relator), 0)
        # In I2(8) the same word is (s2 s3)^-1.
        self.assertEqual(word_length(TRIANGLE_238, relator), 2)

    def test_inverse_and_product(self):
        g = graph([5, 'inf'])
        w = word((0, 2), (1, 3))
        self.assertEqual(inverse(g, w), word((1, -3), (0, -2)))
        self.assertEqual(product(g, w, inverse(g, w)), IDENTITY)


class BallTests(SimpleTestCase):
    def test_cyclic_group(self):
        table = ball(graph([5]), 5)
        self.assertEqual(table.a, (1, 2, 2, 0, 0, 0))
        self.assertEqual(table.order, 5)

    def test_infinite_dihedral(self):
        table = ball(D_INFTY, 6)
        self.assertEqual(table.a, (1, 2, 2, 2, 2, 2, 2))
        self.assertEqual(table.b, (1, 3, 5, 7, 9, 11, 13))
        self.assertIsNone(table.order)

    def test_symmetric_group(self):
        table = ball(A3, None)
        self.assertEqual(table.a, (1, 3, 5, 6, 5, 3, 1))
        self.assertEqual(table.order, 24)
        self.assertEqual(group_order(A3), 24)

    def test_free_products(self):
        self.assertEqual(ball(F2, 3).a, (1, 4, 12, 36))
        self.assertEqual(ball(graph([3, 3], [(1, 2, 'inf')]), 3).a, (1, 4, 8, 16))

    def test_levels_are_word_lengths(self):
        g = graph([3, 2, 2], [(2, 3, 4)])
        table = ball(g, 4, keep_elements=True)
        for m, level in enumerate(table.elements):
            for element in level:
                self.assertEqual(word_length(g, element), m)

    def test_fekete_premise(self):
        b = ball(TRIANGLE_237, 8).b
        for m in range(5):
            for k in range(5):
                self.assertLessEqual(b[m + k], b[m] * b[k])

    def test_ball_budget(self):
        with self.assertRaises(BallBudgetExceeded):
            ball(F2, 5, budget=10)

    def test_agrees_with_root_permutations(self):
        for g in (A3, graph([2, 2], [(1, 2, 6)]), graph([2, 2, 2], [(1, 2, 4), (2, 3, 3)])):
            self.assertEqual(ball(g, None).a, coxeter_ball(g).a)


class SubgroupTests(SimpleTestCase):
    def test_image_of_cyclic_group_in_induced_graph(self):
        lam, generator_map = induced_coxeter_graph(graph([5]))
        self.assertEqual(group_order(lam), 10)
        image = SyllabicWord(tuple(Syllable(lam.index(v), 1) for v in generator_map['v1']))
        self.assertEqual(subgroup_ball(lam, [image], 5).order, 5)


class MarkingAgreementTests(SimpleTestCase):
    def test_identical_graphs(self):
        self.assertEqual(marking_agreement_radius(A2, A2, 4), 4)

    def test_involution_against_order_three(self):
        self.assertEqual(marking_agreement_radius(graph([2]), graph([3]), 4), 1)

    def test_commuting_against_free(self):
        # s1 s2 s1^-1 s2^-1 has length 4.
        self.assertEqual(marking_agreement_radius(graph(['inf', 'inf']), F2, 6), 3)

    def test_triangle_groups(self):
        self.assertEqual(marking_agreement_radius(TRIANGLE_237, TRIANGLE_238, 10), 10)

    def test_rank_mismatch(self):
        with self.assertRaises(RankMismatch):
            marking_agreement_radius(A2, A3, 3)


class RootSystemTests(SimpleTestCase):
    def test_finite_types(self):
        self.assertTrue(is_finite_coxeter(A3))
        self.assertEqual(coxeter_ball(A3).a, (1, 3, 5, 6, 5, 3, 1))
        h3 = graph([2, 2, 2], [(1, 2, 5), (2, 3, 3)])
        self.assertEqual(coxeter_ball(h3).order, 120)

    def test_infinite_types(self):
        self.assertFalse(is_finite_coxeter(graph([2, 2, 2], [(1, 2, 3), (2, 3, 3), (1, 3, 3)]), cap=200))
        self.assertFalse(is_finite_coxeter(TRIANGLE_237, cap=200))
        self.assertFalse(is_finite_coxeter(D_INFTY, cap=200))

    def test_truncated_walk(self):
        self.assertEqual(coxeter_ball(A3, 3).a, (1, 3, 5, 6))


class SurfaceSyntaxTests(SimpleTestCase):
    def test_positional_names(self):
        self.assertEqual(parse_word(A2, 's1^3 s2^-1'), word((0, 3), (1, -1)))

    def test_vertex_ids(self):
        g = DyerGraph.build([('a', 2), ('b', 'inf')])
        w = parse_word(g, 'b^2 a')
        self.assertEqual(w, word((1, 2), (0, 1)))
        self.assertEqual(format_word(g, w), 'b^2 a')

    def test_identity(self):
        self.assertEqual(parse_word(A2, '1'), IDENTITY)
        self.assertEqual(format_word(A2, IDENTITY), '1')

    def test_bad_tokens(self):
        for text in ('s3', 'x', 's1^y'):
            with self.assertRaises(InvalidWord):
                parse_word(A2, text)

    def test_json_words(self):
        w = load_word(A2, [['v1', 1], ['v2', -1]])
        self.assertEqual(w, word((0, 1), (1, -1)))
        self.assertEqual(dump_word(A2, w), [['v1', 1], ['v2', -1]])
        with self.assertRaises(InvalidWord):
            load_word(A2, [['v1']])
        with self.assertRaises(InvalidWord):
            load_word(A2, [['v9', 1]])


def remarked(g, order):
    """The same Dyer graph with its generators marked in ``order``."""
    vertices = [g.vertices[i] for i in order]
    return DyerGraph.build([(v, g.order(v)) for v in vertices], [(e.u, e.v, e.m) for e in g.edges])


class MatrixRepresentationTests(SimpleTestCase):
    """Normal forms against the faithful action of D(g) on the induced root space."""

    def assertMatchesMatrices(self, g, radius):
        rewriter = Rewriter(g)
        group = LinearDyerGroup(g)
        table = ball(g, radius, keep_elements=True, rewriter=rewriter)
        letters = [(gen, exp, group.matrix(word((gen, exp)))) for gen, exp in rewriter.letters()]
        for level in table.elements[:radius]:
            for w in level:
                current = group.matrix(w)
                for gen, exp, step in letters:
                    result = rewriter.multiply(NormalForm.of(w), gen, exp).word
                    self.assertTrue(group.same_element(group.matrix(result), current @ step),
                                    f'{w} * {(gen, exp)} -> {result}')
        self.assertDistinctElements(group, [w for level in table.elements for w in level])

    def assertDistinctElements(self, group, words):
        matrices = np.array([group.matrix(w).ravel() for w in words])
        # sort along a generic direction; equal matrices land next to each other
        key = matrices @ np.random.default_rng(7).standard_normal(matrices.shape[1])
        order = np.argsort(key)
        for a, i in enumerate(order):
            for j in order[a + 1:]:
                if key[j] - key[i] > 1e-6 * max(1.0, abs(key[i])):
                    break
                self.assertFalse(group.same_element(matrices[i], matrices[j]), f'{words[i]} = {words[j]}')

    def test_generators_have_their_orders(self):
        group = LinearDyerGroup(graph([5, 'inf', 2], [(1, 2, 'inf'), (2, 3, 'inf')]))
        identity = np.eye(group.dimension)
        self.assertTrue(group.same_element(group.matrix(word((0, 5))), identity))
        self.assertFalse(group.same_element(group.matrix(word((0, 2))), identity))
        self.assertFalse(group.same_element(group.matrix(word((1, 12))), identity))
        self.assertTrue(group.same_element(group.matrix(word((2, 2))), identity))
        self.assertTrue(group.same_element(group.matrix(word((1, 3), (1, -3))), identity))

    def test_small_graphs(self):
        samples = (
            A3, F2, D_INFTY, TRIANGLE_237, graph([5]), graph([3, 4], [(1, 2, 'inf')]),
            graph(['inf', 2, 2], [(1, 2, 'inf'), (2, 3, 4)]), graph([3, 'inf']),
        )
        for g in samples:
            with self.subTest(graph=g):
                self.assertMatchesMatrices(g, 4)

    @tag('slow')
    def test_every_graph_on_three_vertices(self):
        for g in enumerate_dyer_graphs(3):
            with self.subTest(graph=g):
                self.assertMatchesMatrices(g, 5)


class RemarkingTests(SimpleTestCase):
    """Invariants of a Dyer graph do not depend on the order of its marking."""

    def corpus(self):
        rng = random.Random(41)
        graphs = list(enumerate_dyer_graphs(3, n_min=2))
        return rng.sample(graphs, 30)

    def test_classification_series_and_spheres(self):
        for g in self.corpus():
            reference = (classify_dyer(g).kind, growth_series(g).to_json(), ball(g, 3).a)
            for order in permutations(range(g.rank)):
                h = remarked(g, order)
                with self.subTest(graph=g, order=order):
                    self.assertEqual((classify_dyer(h).kind, growth_series(h).to_json(), ball(h, 3).a), reference)

    def test_word_lengths(self):
        for g in self.corpus()[:15]:
            elements = [w for level in ball(g, 3, keep_elements=True).elements for w in level]
            for order in permutations(range(g.rank)):
                h = remarked(g, order)
                position = [h.index(v) for v in g.vertices]
                for w in elements:
                    moved = SyllabicWord.of((position[s.gen], s.exp) for s in w)
                    self.assertEqual(word_length(h, moved), w.exponent_sum)
