import random
import unittest

from hitcalc import core, steenrod
from hitcalc.config import GeneratorMode
from hitcalc.core import Monomial
from hitcalc.exceptions import DegreeMismatchException, ResourceLimitException
from hitcalc.steenrod import ChiOperator, Polynomial


def random_monomial(rng: random.Random, s: int, top: int) -> Monomial:
    return Monomial(rng.randint(0, top) for _ in range(s))


def random_polynomial(rng: random.Random, s: int, d: int, size: int) -> Polynomial:
    monomials = core.enumerate_monomials(s, d)
    return Polynomial(rng.sample(monomials, min(size, len(monomials))), s=s)


class TestPolynomial(unittest.TestCase):

    def test_duplicate_terms_cancel(self):
        f = Polynomial([(1, 2), (2, 1), (1, 2)])
        self.assertEqual(Polynomial([(2, 1)]), f)
        self.assertEqual(1, len(f))

    def test_zero(self):
        self.assertTrue(Polynomial.zero(3).is_zero())
        self.assertIsNone(Polynomial.zero(3).degree)
        self.assertEqual('0', str(Polynomial.zero(3)))

    def test_inhomogeneous(self):
        self.assertRaises(DegreeMismatchException, lambda: Polynomial([(1, 2), (1, 1)]))

    def test_mixed_variables(self):
        self.assertRaises(ValueError, lambda: Polynomial([(1, 2), (1, 1, 1)]))
        self.assertRaises(ValueError, lambda: Polynomial([(1, 2)], s=3))

    def test_addition(self):
        f = Polynomial([(1, 2), (2, 1)])
        g = Polynomial([(2, 1), (3, 0)])
        self.assertEqual(Polynomial([(1, 2), (3, 0)]), f + g)
        self.assertTrue((f + f).is_zero())

    def test_addition_degree_mismatch(self):
        self.assertRaises(DegreeMismatchException, lambda: Polynomial([(1, 2)]) + Polynomial([(1, 1)]))

    def test_product(self):
        f = Polynomial([(1, 0), (0, 1)])
        self.assertEqual(Polynomial([(2, 0), (0, 2)]), f * f)

    def test_iteration_is_ordered(self):
        f = Polynomial([(3, 0), (1, 2), (2, 1)])
        keys = [core.sort_key(m) for m in f]
        self.assertEqual(sorted(keys), keys)

    def test_parse(self):
        f = Polynomial.parse('[2,2,1,1,7]+[1,2,2,1,7]')
        self.assertEqual(2, len(f))
        self.assertIn((1, 2, 2, 1, 7), f)
        self.assertEqual(Polynomial([(2, 0), (1, 1)]), Polynomial.parse('x1^2 + x1x2', 2))
        self.assertTrue(Polynomial.parse('0', 3).is_zero())

    def test_parse_invalid(self):
        self.assertRaises(ValueError, lambda: Polynomial.parse(''))
        self.assertRaises(ValueError, lambda: Polynomial.parse('[1,2]+[1,a]'))

    def test_str(self):
        self.assertEqual('x1x2^2 + x1^2x2', str(Polynomial([(2, 1), (1, 2)])))


class TestSquares(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(2024)

    def test_sq_on_power(self):
        self.assertEqual(Polynomial([(2,)]), steenrod.sq_on_power(1, 1, 1))
        self.assertTrue(steenrod.sq_on_power(1, 1, 2).is_zero())
        self.assertEqual(Polynomial([(0, 0, 6)]), steenrod.sq_on_power(1, 3, 5, 3))
        self.assertTrue(steenrod.sq_on_power(3, 3, 5, 3).is_zero())
        self.assertTrue(steenrod.sq_on_power(6, 1, 5).is_zero())

    def test_sq_product(self):
        self.assertEqual(Polynomial([(2, 1), (1, 2)]), steenrod.sq(1, (1, 1)))

    def test_sq_zero_is_identity(self):
        f = Polynomial([(1, 2, 3)])
        self.assertEqual(f, steenrod.sq(0, f))

    def test_sq_negative(self):
        self.assertRaises(ValueError, lambda: steenrod.sq(-1, (1, 1)))

    def test_instability(self):
        for _ in range(500):
            m = random_monomial(self.rng, 3, 6)
            self.assertTrue(steenrod.sq(m.degree + 1, m).is_zero())
            self.assertEqual(Polynomial.of(m ** 2), steenrod.sq(m.degree, m))

    def test_cartan_formula(self):
        for _ in range(500):
            x = random_monomial(self.rng, 3, 5)
            y = random_monomial(self.rng, 3, 5)
            k = self.rng.randint(1, 8)
            product = Polynomial.of(x * y)
            expected = Polynomial.zero(3)
            for i in range(k + 1):
                expected = expected + steenrod.sq(i, x) * steenrod.sq(k - i, y)
            self.assertEqual(expected, steenrod.sq(k, product), (x, y, k))

    def test_adem_relations(self):
        for _ in range(500):
            f = random_monomial(self.rng, 3, 7)
            self.assertTrue(steenrod.sq_word([1, 1], f).is_zero())
            self.assertEqual(steenrod.sq(3, f), steenrod.sq_word([1, 2], f))
            self.assertEqual(steenrod.sq_word([3, 1], f), steenrod.sq_word([2, 2], f))

    def test_support_is_preserved(self):
        for _ in range(500):
            m = random_monomial(self.rng, 5, 6)
            k = self.rng.randint(1, 6)
            for term in steenrod.sq(k, m):
                self.assertEqual(core.support(m), core.support(term))


class TestConjugates(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(11)

    def test_small_conjugates(self):
        for _ in range(500):
            f = random_monomial(self.rng, 4, 6)
            self.assertEqual(steenrod.sq(1, f), steenrod.chi_sq(1, f))
            self.assertEqual(steenrod.sq(2, f), steenrod.chi_sq(2, f))
            self.assertEqual(steenrod.sq_word([2, 1], f), steenrod.chi_sq(3, f))

    def test_chi_sq_12(self):
        for _ in range(500):
            f = random_polynomial(self.rng, 3, self.rng.randint(4, 9), 2)
            expected = steenrod.sq_word([8, 4], f) + steenrod.sq_word([8, 3, 1], f)
            self.assertEqual(expected, steenrod.chi_sq(12, f), f)

    def test_cache_limit_does_not_change_results(self):
        f = random_polynomial(self.rng, 4, 9, 5)
        self.assertEqual(ChiOperator(cache_limit=0).apply(7, f), ChiOperator(cache_limit=64).apply(7, f))

    def test_memo_matches_uncached(self):
        uncached = ChiOperator(cache_limit=0)
        cached = ChiOperator(cache_limit=64)
        for _ in range(500):
            m = random_monomial(self.rng, 4, 5)
            k = self.rng.randint(0, 10)
            expected = uncached.apply(k, m)
            self.assertEqual(expected, cached.apply(k, m), (k, m))
            self.assertEqual(expected, steenrod.chi_sq(k, m), (k, m))

    def test_negative(self):
        self.assertRaises(ValueError, lambda: ChiOperator(cache_limit=-1))
        self.assertRaises(ValueError, lambda: steenrod.chi_sq(-1, (1, 1)))


class TestGenerators(unittest.TestCase):

    def test_generator_squares(self):
        self.assertListEqual([1, 2, 4, 8], steenrod.generator_squares(13))
        self.assertListEqual(list(range(1, 14)), steenrod.generator_squares(13, GeneratorMode.ALL))
        self.assertListEqual([1, 2], steenrod.generator_squares(13, max_square=3))

    def test_generator_count(self):
        self.assertEqual(4026, steenrod.hit_generator_count(5, 13))
        self.assertEqual(4026, sum(1 for _ in steenrod.hit_generators(5, 13)))

    def test_generators_are_squares(self):
        for (k, m), poly in steenrod.hit_generators(3, 6):
            self.assertEqual(steenrod.sq(k, m), poly)

    def test_generators_bounded_square(self):
        generators = list(steenrod.hit_generators(3, 7, max_square=3))
        self.assertEqual(steenrod.hit_generator_count(3, 7, max_square=3), len(generators))
        self.assertEqual({1, 2}, {k for (k, _), _ in generators})
        self.assertLess(len(generators), steenrod.hit_generator_count(3, 7))

    def test_generators_positive_only(self):
        generators = list(steenrod.hit_generators(3, 7, positive_only=True))
        self.assertTrue(all(core.is_positive(m) for (_, m), _ in generators))
        expected = sum(1 for (_, m), _ in steenrod.hit_generators(3, 7) if core.is_positive(m))
        self.assertEqual(expected, len(generators))

    def test_generators_degree(self):
        self.assertRaises(ValueError, lambda: list(steenrod.hit_generators(5, 0)))

    def test_generators_limit(self):
        self.assertRaises(ResourceLimitException, lambda: list(steenrod.hit_generators(5, 13, limit=100)))


class TestKameko(unittest.TestCase):

    def setUp(self):
        self.rng = random.Random(5)

    def test_psi(self):
        self.assertEqual((1, 0, 3, 2, 6), steenrod.kameko_psi((3, 1, 7, 5, 13)))
        self.assertIsNone(steenrod.kameko_psi((3, 2, 7, 5, 13)))

    def test_section(self):
        self.assertEqual((3, 1, 7), steenrod.kameko_section((1, 0, 3)))
        self.assertEqual((1, 0, 3), steenrod.kameko_psi(steenrod.kameko_section((1, 0, 3))))
        self.assertRaises(ValueError, lambda: steenrod.kameko_section((1, 0), 3))

    def test_psi_commutes_with_squares(self):
        for _ in range(500):
            m = random_monomial(self.rng, 4, 9)
            i = self.rng.randint(0, 5)
            self.assertEqual(steenrod.sq(i, steenrod.kameko_psi_polynomial(m)),
                             steenrod.kameko_psi_polynomial(steenrod.sq(2 * i, m)), (m, i))
            self.assertTrue(steenrod.kameko_psi_polynomial(steenrod.sq(2 * i + 1, m)).is_zero(), (m, i))
