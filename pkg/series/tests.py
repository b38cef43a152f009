from django.test import SimpleTestCase

from core.exceptions import NotSpherical, RankCapExceeded, SeriesError
from graphs.conversions import disjoint_union
from graphs.models import INF, DyerGraph
from words.enumeration import ball
from words.roots import coxeter_ball

from .growth import (
    cyclic_growth, growth_series, power_series, product_series, recursion_identity_holds,
    series_coefficients, spherical_coxeter_poly,
)
from .models import IntPoly, RationalSeries


def graph(orders, edges=(), prefix='v'):
    return DyerGraph.build([(f'{prefix}{i + 1}', f) for i, f in enumerate(orders)],
                           [(f'{prefix}{u}', f'{prefix}{v}', m) for u, v, m in edges])


def path(weights):
    return graph([2] * (len(weights) + 1), [(i + 1, i + 2, m) for i, m in enumerate(weights)])


def type_d(n):
    edges = [(i, i + 1, 3) for i in range(1, n - 1)] + [(n - 2, n, 3)]
    return graph([2] * n, edges)


D_INFTY = graph([2, 2], [(1, 2, 'inf')])
F2 = graph(['inf', 'inf'], [(1, 2, 'inf')])
TRIANGLE_237 = path([3, 7])
AFFINE_A2 = graph([2, 2, 2], [(1, 2, 3), (2, 3, 3), (1, 3, 3)])


class PolynomialTests(SimpleTestCase):
    def test_canonical_form(self):
        self.assertEqual(IntPoly((1, 2, 0, 0)).coefficients, (1, 2))
        self.assertTrue(IntPoly((0, 0)).is_zero)

    def test_arithmetic(self):
        p, q = IntPoly((1, 1)), IntPoly((1, -1))
        self.assertEqual(p * q, IntPoly((1, 0, -1)))
        self.assertEqual(p + q, IntPoly((2,)))
        self.assertEqual(p - p, IntPoly())
        self.assertEqual(p ** 3, IntPoly((1, 3, 3, 1)))
        self.assertEqual(IntPoly((1, 2, 2))(1), 5)

    def test_gcd(self):
        g = IntPoly((-1, 0, 1)).gcd(IntPoly((-1, 1)))
        self.assertIn(g.coefficients, [(-1, 1), (1, -1)])

    def test_big_integers(self):
        big = IntPoly((10 ** 40, 1))
        self.assertEqual((big * big)[0], 10 ** 80)


class RationalSeriesTests(SimpleTestCase):
    def test_sum_keeps_content(self):
        r = RationalSeries.of((1, 1), (1, -1))
        self.assertEqual(r + r, RationalSeries.of((2, 2), (1, -1)))

    def test_lowest_terms(self):
        r = RationalSeries.of((-1, 0, 1), (-1, 1))
        self.assertEqual(r, RationalSeries.of((1, 1)))
        self.assertTrue(r.is_polynomial)

    def test_denominator_sign(self):
        r = RationalSeries.of((1,), (-1, 3))
        self.assertEqual(r.den.coefficients, (1, -3))
        self.assertEqual(r.num.coefficients, (-1,))

    def test_invert_is_an_involution(self):
        r = RationalSeries.of((1, 1), (1, -3))
        self.assertEqual(r.invert().invert(), r)
        self.assertEqual(r / r, RationalSeries.of((1,)))

    def test_zero(self):
        with self.assertRaises(SeriesError):
            RationalSeries.of((0,)).invert()
        with self.assertRaises(SeriesError):
            RationalSeries.of((1,), ())

    def test_json(self):
        self.assertEqual(RationalSeries.of((1, 1), (1, -1)).to_json(), {'num': [1, 1], 'den': [1, -1]})


class BaseCaseTests(SimpleTestCase):
    def test_cyclic_groups(self):
        self.assertEqual(cyclic_growth(5), RationalSeries.of((1, 2, 2)))
        self.assertEqual(cyclic_growth(4), RationalSeries.of((1, 2, 1)))
        self.assertEqual(cyclic_growth(2), RationalSeries.of((1, 1)))
        self.assertEqual(cyclic_growth(INF), RationalSeries.of((1, 1), (1, -1)))

    def test_cyclic_groups_against_enumeration(self):
        for p in list(range(2, 21)) + ['inf']:
            with self.subTest(p=p):
                expected = ball(graph([p]), 12).a
                self.assertEqual(series_coefficients(cyclic_growth(p), 12).a, expected)

    def test_dihedral_polynomial(self):
        self.assertEqual(spherical_coxeter_poly(path([7])), IntPoly((1, 2, 2, 2, 2, 2, 2, 1)))

    def test_single_involution(self):
        self.assertEqual(spherical_coxeter_poly(graph([2])), IntPoly((1, 1)))

    def test_symmetric_group(self):
        poly = spherical_coxeter_poly(path([3, 3]))
        self.assertEqual(poly(1), 24)
        self.assertEqual(poly.degree, 6)

    def test_rejects_infinite_groups(self):
        with self.assertRaises(NotSpherical):
            spherical_coxeter_poly(AFFINE_A2)


class SphericalTableTests(SimpleTestCase):
    """Exponent tables against enumeration of the finite group."""

    def assertTableMatches(self, g):
        poly = spherical_coxeter_poly(g)
        table = coxeter_ball(g)
        self.assertEqual(table.a, poly.coefficients)
        self.assertEqual(table.order, poly(1))

    def test_type_a(self):
        for n in range(1, 8):
            with self.subTest(n=n):
                self.assertTableMatches(path([3] * (n - 1)) if n > 1 else graph([2]))

    def test_type_b(self):
        for n in range(2, 6):
            with self.subTest(n=n):
                self.assertTableMatches(path([3] * (n - 2) + [4]))

    def test_type_d(self):
        for n in range(4, 7):
            with self.subTest(n=n):
                self.assertTableMatches(type_d(n))

    def test_exceptional(self):
        for weights in ([3, 4, 3], [5, 3], [5, 3, 3]):
            with self.subTest(weights=weights):
                self.assertTableMatches(path(weights))

    def test_dihedral(self):
        for m in range(3, 51):
            with self.subTest(m=m):
                self.assertTableMatches(path([m]))


class GrowthSeriesTests(SimpleTestCase):
    def test_infinite_dihedral(self):
        self.assertEqual(growth_series(D_INFTY), RationalSeries.of((1, 1), (1, -1)))

    def test_free_group(self):
        f = growth_series(F2)
        self.assertEqual(f, RationalSeries.of((1, 1), (1, -3)))
        self.assertEqual(series_coefficients(f, 3).a, (1, 4, 12, 36))

    def test_free_product_of_cyclic_groups(self):
        f = growth_series(graph([3, 3], [(1, 2, 'inf')]))
        self.assertEqual(f, RationalSeries.of((1, 2), (1, -2)))
        self.assertEqual(series_coefficients(f, 3).a, (1, 4, 8, 16))

    def test_free_abelian(self):
        self.assertEqual(growth_series(graph(['inf', 'inf'])), RationalSeries.of((1, 1), (1, -1)) ** 2)

    def test_spherical_is_polynomial(self):
        f = growth_series(graph([2, 2, 3, 5], [(1, 2, 4)]))
        self.assertTrue(f.is_polynomial)
        self.assertEqual(f.num(1), 8 * 3 * 5)

    def test_direct_product(self):
        g1, g2 = TRIANGLE_237, graph([2, 2], [(1, 2, 'inf')], prefix='w')
        self.assertEqual(growth_series(disjoint_union(g1, g2)), growth_series(g1) * growth_series(g2))

    def test_euclidean_product_path(self):
        for g in (AFFINE_A2, graph([2, 2, 4], [(1, 2, 'inf')]), path([4, 4])):
            with self.subTest(g=g.edges):
                self.assertEqual(product_series(g), growth_series(g))

    def test_recursion_identity(self):
        self.assertTrue(recursion_identity_holds(TRIANGLE_237))
        self.assertTrue(recursion_identity_holds(F2))
        with self.assertRaises(SeriesError):
            recursion_identity_holds(path([3]))

    def test_rank_cap(self):
        with self.assertRaises(RankCapExceeded):
            growth_series(TRIANGLE_237, rank_cap=2)

    def test_against_enumeration(self):
        graphs = [
            TRIANGLE_237, AFFINE_A2, F2,
            graph([3, 2, 'inf'], [(1, 2, 'inf'), (2, 3, 'inf')]),
            graph([2, 2, 2], [(1, 2, 3), (2, 3, 'inf')]),
            graph([4, 2, 2], [(2, 3, 5)]),
        ]
        for g in graphs:
            with self.subTest(g=g.edges):
                self.assertEqual(series_coefficients(growth_series(g), 7).a, ball(g, 7).a)


class CoefficientTests(SimpleTestCase):
    def test_polynomial_then_zeros(self):
        self.assertEqual(series_coefficients(RationalSeries.of((1, 2, 1)), 4).a, (1, 2, 1, 0, 0))

    def test_infinite_dihedral(self):
        self.assertEqual(series_coefficients(RationalSeries.of((1, 1), (1, -1)), 4).a, (1, 2, 2, 2, 2))

    def test_signed_expansion(self):
        self.assertEqual(power_series(RationalSeries.of((1, -1), (1, 1)), 3), [1, -2, 2, -2])

    def test_pole_at_zero(self):
        with self.assertRaises(SeriesError):
            power_series(RationalSeries.of((1,), (0, 1)), 3)

    def test_non_integer_coefficient(self):
        with self.assertRaises(SeriesError):
            power_series(RationalSeries.of((1,), (2, -1)), 3)
