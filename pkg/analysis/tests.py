import random
from fractions import Fraction

from django.test import SimpleTestCase, override_settings, tag

from core.exceptions import FamilyError, NoOrderMorphism
from graphs.classification import classify_dyer
from graphs.models import DyerGraph
from graphs.morphisms import is_order_morphism
from series.models import IntPoly, RationalSeries

from .continuity import continuity_experiment, truncation_agreement
from .models import Family, GrowthRateResult, decimal_bound
from .monotonicity import check_monotonicity
from .rates import fekete_check, growth_rate, isolate_smallest_root, rate_from_series
from .serializers import load_family, parse_ks
from .sweep import (
    classification_sweep, enumerate_dyer_graphs, oracle_sweep, random_dyer_graph, random_enlargement,
)


def graph(orders, edges=()):
    return DyerGraph.build([(f'v{i + 1}', f) for i, f in enumerate(orders)],
                           [(f'v{u}', f'v{v}', m) for u, v, m in edges])


def path(weights):
    return graph([2] * (len(weights) + 1), [(i + 1, i + 2, m) for i, m in enumerate(weights)])


F2 = graph(['inf', 'inf'], [(1, 2, 'inf')])
D_INFTY = graph([2, 2], [(1, 2, 'inf')])


def triangle(k):
    return path([3, k])


class RootIsolationTests(SimpleTestCase):
    def test_rational_root_is_exact(self):
        self.assertEqual(isolate_smallest_root(IntPoly((1, -3))), (Fraction(1, 3), Fraction(1, 3)))

    def test_no_root_in_unit_interval(self):
        self.assertIsNone(isolate_smallest_root(IntPoly((1,))))
        self.assertIsNone(isolate_smallest_root(IntPoly((1, -1))))
        self.assertIsNone(isolate_smallest_root(IntPoly((1, 1))))

    def test_irrational_root(self):
        tol = Fraction(1, 10 ** 10)
        lo, hi = isolate_smallest_root(IntPoly((1, 0, -2)), tol)
        self.assertLessEqual(hi - lo, tol * lo * lo)
        self.assertTrue(2 * lo * lo < 1 < 2 * hi * hi)

    def test_smallest_of_several_roots(self):
        # (1 - 2z)(1 - 3z)(1 - 2z^2)
        q = IntPoly((1, -5, 6)) * IntPoly((1, 0, -2))
        self.assertEqual(isolate_smallest_root(q), (Fraction(1, 3), Fraction(1, 3)))

    def test_repeated_factor(self):
        q = IntPoly((1, 0, -2)) ** 2
        lo, hi = isolate_smallest_root(q)
        self.assertTrue(2 * lo * lo < 1 < 2 * hi * hi)

    def test_close_roots_of_different_factors(self):
        # 1/sqrt(2) = 0.7071067811865...
        tol = Fraction(1, 10 ** 6)
        below = Fraction(70710678, 10 ** 8)
        q = IntPoly((1, 0, -2)) * IntPoly((-70710678, 10 ** 8))
        self.assertEqual(isolate_smallest_root(q, tol), (below, below))

        above = Fraction(70710679, 10 ** 8)
        q = IntPoly((1, 0, -2)) * IntPoly((-70710679, 10 ** 8))
        lo, hi = isolate_smallest_root(q, tol)
        self.assertTrue(2 * lo * lo < 1 < 2 * hi * hi)
        self.assertLess(hi, above)
        self.assertLessEqual(hi - lo, tol * lo * lo)


class GrowthRateTests(SimpleTestCase):
    def test_spherical_and_euclidean(self):
        for g, kind in ((path([3, 3]), 'Spherical'), (D_INFTY, 'Euclidean'), (graph([3, 'inf']), 'Spherical')):
            rate = growth_rate(g)
            self.assertEqual((rate.tau_lower, rate.tau_upper), (1, 1))
            self.assertTrue(rate.is_one)
            self.assertEqual(rate.to_json()['classification'], kind)

    def test_free_group(self):
        rate = growth_rate(F2)
        self.assertEqual((rate.tau_lower, rate.tau_upper), (3, 3))
        self.assertTrue(rate.exact)

    def test_triangle_group(self):
        rate = growth_rate(triangle(7))
        self.assertGreater(rate.tau_lower, Fraction('1.176'))
        self.assertLess(rate.tau_upper, Fraction('1.177'))
        self.assertLessEqual(rate.width, Fraction('1e-10'))

    def test_free_product_of_cyclic_groups(self):
        rate = growth_rate(graph([2, 3], [(1, 2, 'inf')]))
        self.assertTrue(rate.tau_lower ** 2 <= 2 <= rate.tau_upper ** 2)

    def test_custom_tolerance(self):
        rate = growth_rate(triangle(7), tol='1e-4')
        self.assertLessEqual(rate.width, Fraction('1e-4'))

    def test_series_only_rate(self):
        self.assertTrue(rate_from_series(RationalSeries.of((1, 1), (1, -1))).is_one)
        rate = rate_from_series(RationalSeries.of((1, 1), (1, -3)))
        self.assertEqual(rate.tau_lower, 3)

    def test_fekete(self):
        report = fekete_check(F2, 20)
        self.assertEqual(report.b, 2 * 3 ** 20 - 1)
        self.assertTrue(report.holds)
        self.assertTrue(fekete_check(triangle(7), 40).lower_holds)
        self.assertTrue(fekete_check(graph(['inf', 'inf']), 10).holds)

    def test_decimal_output(self):
        self.assertEqual(decimal_bound(Fraction(1, 3), up=False), '0.333333333333333')
        self.assertEqual(decimal_bound(Fraction(1, 3), up=True), '0.333333333333334')
        self.assertEqual(decimal_bound(Fraction(3), up=True), '3')
        result = GrowthRateResult(Fraction(3), Fraction(3), False)
        self.assertEqual(result.to_json(), {'tau_lower': '3', 'tau_upper': '3', 'is_one': False})


class MonotonicityTests(SimpleTestCase):
    def test_cyclic_groups(self):
        verdict = check_monotonicity(graph([3]), graph([5]), m_max=4)
        self.assertEqual(verdict.witness, {'v1': 'v1'})
        self.assertEqual(verdict.coefficients, ((1, 2, 0, 0, 0), (1, 2, 2, 0, 0)))
        self.assertEqual(verdict.margins, (0, 0, 2, 0, 0))
        self.assertTrue(verdict.holds)

    def test_reflexive(self):
        verdict = check_monotonicity(triangle(7), triangle(7), m_max=10)
        self.assertEqual(set(verdict.margins), {0})

    def test_triangle_groups(self):
        verdict = check_monotonicity(triangle(7), triangle(8), m_max=20)
        self.assertTrue(verdict.coefficients_hold)
        self.assertTrue(verdict.tau_consistent)
        self.assertTrue(verdict.tau[1].proves_greater_than(verdict.tau[0]))

    def test_triangle_family_strictly_ordered(self):
        rates = [growth_rate(triangle(k)) for k in range(7, 21)]
        for smaller, larger in zip(rates, rates[1:]):
            self.assertTrue(larger.proves_greater_than(smaller))

    def test_no_witness(self):
        with self.assertRaises(NoOrderMorphism):
            check_monotonicity(path([7]), path([3]))

    def test_rejected_witness(self):
        with self.assertRaises(NoOrderMorphism):
            check_monotonicity(graph([5]), graph([3]), phi={'v1': 'v1'})

    @override_settings(DYER_RANK_CAP=1)
    def test_enumeration_fallback(self):
        verdict = check_monotonicity(graph([3, 'inf'], [(1, 2, 'inf')]), F2, m_max=4)
        self.assertTrue(verdict.from_enumeration)
        self.assertIsNone(verdict.tau)
        self.assertEqual(verdict.coefficients[1], (1, 4, 12, 36, 108))
        self.assertTrue(verdict.holds)

    def test_random_pairs(self):
        rng = random.Random(20240611)
        weights = (2, 3, 4, 'inf')
        for _ in range(30):
            g = random_dyer_graph(rng, rng.randint(1, 4), weights)
            g2 = random_enlargement(rng, g, weights, extra_vertices=rng.randint(0, 1))
            self.assertTrue(is_order_morphism(g, g2, {v: v for v in g.vertices}))
            verdict = check_monotonicity(g, g2, m_max=12)
            self.assertTrue(verdict.coefficients_hold, verdict.margins)
            self.assertTrue(verdict.tau_consistent)


class ContinuityTests(SimpleTestCase):
    def triangle_family(self):
        return Family(triangle(7), (('edge', ('v2', 'v3')),), triangle('inf'))

    def test_cyclic_family(self):
        family = Family(graph([3]), (('vertex', 'v1'),), graph(['inf']))
        report = continuity_experiment(family, [3, 4, 5])
        self.assertTrue(all(row.tau.is_one for row in report.rows))
        self.assertTrue(report.limit.is_one)
        self.assertEqual(set(report.gaps), {0})

    def test_dihedral_family(self):
        family = Family(path([3]), (('edge', ('v1', 'v2')),), D_INFTY)
        report = continuity_experiment(family, [3, 4, 6, 12])
        self.assertTrue(report.limit.is_one)
        self.assertEqual(report.limit.kind.label, 'Euclidean')
        self.assertEqual(set(report.gaps), {0})

    def test_triangle_family(self):
        ks = [7, 10, 15, 20, 30, 50]
        report = continuity_experiment(self.triangle_family(), ks)
        self.assertTrue(report.monotone)
        self.assertTrue(report.bounded)
        self.assertLess(report.gaps[-1], report.gaps[0])
        self.assertEqual([row.agreement for row in report.rows], [7, 10, 15, 20, 21, 21])
        lines = report.to_csv().splitlines()
        self.assertEqual(lines[0], 'k,tau_lower,tau_upper,gap')
        self.assertEqual(len(lines), len(ks) + 2)
        self.assertTrue(lines[-1].startswith('inf,'))

    def test_truncation_agreement(self):
        f = RationalSeries.of((1, 1), (1, -1))
        self.assertEqual(truncation_agreement(f, f, 5), 6)

    def test_parameters_must_increase(self):
        with self.assertRaises(FamilyError):
            continuity_experiment(self.triangle_family(), [8, 7])

    def test_limit_must_match(self):
        family = Family(triangle(7), (('edge', ('v2', 'v3')),), triangle(8))
        with self.assertRaises(FamilyError):
            continuity_experiment(family, [7, 8])

    def test_invalid_members(self):
        missing_edge = Family(triangle(7), (('edge', ('v1', 'v3')),), triangle('inf'))
        with self.assertRaises(FamilyError):
            continuity_experiment(missing_edge, [7])
        with self.assertRaises(FamilyError):
            continuity_experiment(self.triangle_family(), [2, 7])

    def test_family_json(self):
        data = {
            'base': {'vertices': [{'id': 'v1', 'order': 2}, {'id': 'v2', 'order': 2}, {'id': 'v3', 'order': 2}],
                     'edges': [{'u': 'v1', 'v': 'v2', 'm': 3}, {'u': 'v2', 'v': 'v3', 'm': 7}]},
            'growing': [{'slot': 'edge:v2-v3'}],
            'limit': {'vertices': [{'id': 'v1', 'order': 2}, {'id': 'v2', 'order': 2}, {'id': 'v3', 'order': 2}],
                      'edges': [{'u': 'v1', 'v': 'v2', 'm': 3}, {'u': 'v2', 'v': 'v3', 'm': 'inf'}]},
        }
        self.assertEqual(load_family(data), self.triangle_family())
        with self.assertRaises(FamilyError):
            load_family({**data, 'growing': [{'slot': 'face:v1'}]})
        with self.assertRaises(FamilyError):
            load_family({**data, 'growing': []})

    def test_parameter_list(self):
        self.assertEqual(parse_ks('7,8, 10'), [7, 8, 10])
        with self.assertRaises(FamilyError):
            parse_ks('7,x')


class SweepTests(SimpleTestCase):
    def test_enumeration_count(self):
        graphs = list(enumerate_dyer_graphs(2, (2, 3, 'inf'), (3, 'inf')))
        self.assertEqual(len(graphs), 22)
        self.assertEqual(len(set(graphs)), 22)

    def test_oracle_rank_two(self):
        self.assertEqual(oracle_sweep(enumerate_dyer_graphs(2), 6), [])

    def test_oracle_rank_three(self):
        graphs = enumerate_dyer_graphs(3, (2, 3, 'inf'), (3, 4, 'inf'), n_min=3)
        self.assertEqual(oracle_sweep(graphs, 4), [])

    def test_growth_rate_one_iff_spherical_or_euclidean(self):
        self.assertEqual(classification_sweep(enumerate_dyer_graphs(2)), [])
        graphs = enumerate_dyer_graphs(3, (2, 3, 'inf'), (3, 4, 6, 'inf'), n_min=3)
        self.assertEqual(classification_sweep(graphs), [])

    def test_enlargement_is_larger(self):
        rng = random.Random(3)
        for _ in range(20):
            g = random_dyer_graph(rng, 3)
            self.assertTrue(is_order_morphism(g, random_enlargement(rng, g), {v: v for v in g.vertices}))


@tag('slow')
class FullSweepTests(SimpleTestCase):
    """The default corpus: every Dyer graph on at most three vertices."""

    def test_classification_over_full_corpus(self):
        graphs = list(enumerate_dyer_graphs(3))
        self.assertEqual(len(graphs), 1319)
        self.assertEqual(classification_sweep(graphs), [])

    def test_growth_rate_above_one_off_spherical_and_euclidean(self):
        for g in enumerate_dyer_graphs(3):
            if classify_dyer(g).has_growth_rate_one:
                continue
            with self.subTest(graph=g):
                rate = growth_rate(g)
                self.assertFalse(rate.is_one)
                self.assertGreater(rate.tau_lower, 1)

    def test_oracle_over_full_weights(self):
        self.assertEqual(oracle_sweep(enumerate_dyer_graphs(2), 10), [])
        # spheres of the rank-three free group grow fivefold with each length
        self.assertEqual(oracle_sweep(enumerate_dyer_graphs(3, n_min=3), 6), [])

    def test_monotonicity_on_random_pairs(self):
        rng = random.Random(20240612)
        for _ in range(200):
            g = random_dyer_graph(rng, rng.randint(1, 3))
            g2 = random_enlargement(rng, g, extra_vertices=rng.randint(0, 1))
            with self.subTest(g=g, g2=g2):
                verdict = check_monotonicity(g, g2, m_max=15)
                self.assertTrue(verdict.coefficients_hold, verdict.margins)
                self.assertTrue(verdict.tau_consistent)
