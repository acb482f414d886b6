import unittest

import numpy as np

from hitcalc import gf2
from hitcalc.gf2 import GF2Matrix, IncrementalSpan


def random_dense(rng: np.random.Generator, m: int, n: int, density: float = 0.5) -> np.ndarray:
    return (rng.random((m, n)) < density).astype(np.uint8)


class TestGF2Matrix(unittest.TestCase):

    def setUp(self):
        self.rng = np.random.default_rng(17)

    def test_dense_round_trip(self):
        dense = random_dense(self.rng, 7, 130)
        matrix = GF2Matrix.from_dense(dense)
        self.assertEqual((7, 130), matrix.shape)
        self.assertEqual(3, matrix.words.shape[1])
        np.testing.assert_array_equal(dense, matrix.to_dense())

    def test_int_rows(self):
        matrix = GF2Matrix.from_int_rows([0b101, 0b010], 3)
        self.assertEqual(1, matrix.get(0, 0))
        self.assertEqual(0, matrix.get(0, 1))
        self.assertEqual(1, matrix.get(0, 2))
        self.assertListEqual([0b101, 0b010], matrix.to_int_rows())

    def test_int_rows_too_wide(self):
        self.assertRaises(ValueError, lambda: GF2Matrix.from_int_rows([0b1000], 3))
        self.assertRaises(ValueError, lambda: GF2Matrix.from_int_rows([-1], 3))

    def test_bad_shape(self):
        self.assertRaises(ValueError, lambda: GF2Matrix(np.zeros((2, 1), dtype=np.uint64), 65))
        self.assertRaises(ValueError, lambda: GF2Matrix.zeros(2, -1))

    def test_rank_matches_naive(self):
        for m, n in [(5, 5), (20, 70), (64, 64), (40, 200), (3, 1), (1, 129)]:
            for density in (0.1, 0.5):
                dense = random_dense(self.rng, m, n, density)
                self.assertEqual(gf2.naive_rank(dense), GF2Matrix.from_dense(dense).rank(), (m, n, density))

    def test_reduced_form_matches_naive(self):
        dense = random_dense(self.rng, 30, 90)
        reduction = GF2Matrix.from_dense(dense).reduce()
        naive = gf2.naive_row_reduce(dense)
        self.assertEqual(naive.pivots, reduction.pivots)
        np.testing.assert_array_equal(naive.matrix[:naive.rank], reduction.matrix.to_dense())

    def test_blocked_matches_plain(self):
        for block_size in (1, 4, 8, 16):
            dense = random_dense(self.rng, 50, 150, 0.3)
            matrix = GF2Matrix.from_dense(dense)
            plain = matrix.reduce()
            blocked = matrix.reduce(block_size=block_size)
            self.assertEqual(plain.pivots, blocked.pivots, block_size)
            self.assertEqual(plain.matrix, blocked.matrix, block_size)

    def test_random_shapes_match_naive(self):
        rng = np.random.default_rng(500)
        for _ in range(500):
            m = int(rng.integers(0, 201))
            n = int(rng.integers(1, 201))
            density = float(rng.uniform(0.02, 0.9))
            dense = random_dense(rng, m, n, density)
            case = (m, n, density)
            matrix = GF2Matrix.from_dense(dense)
            naive = gf2.naive_row_reduce(dense)
            reduction = matrix.reduce()
            self.assertEqual(naive.rank, matrix.rank(), case)
            self.assertEqual(naive.pivots, reduction.pivots, case)
            np.testing.assert_array_equal(naive.matrix[:naive.rank], reduction.matrix.to_dense(), str(case))
            kernel = matrix.kernel()
            self.assertEqual(n - naive.rank, kernel.nrows, case)
            self.assertEqual(gf2.naive_nullspace(dense).shape[0], kernel.nrows, case)
            blocked = matrix.reduce(block_size=int(rng.integers(1, 17)))
            self.assertEqual(reduction.pivots, blocked.pivots, case)
            self.assertEqual(reduction.matrix, blocked.matrix, case)

    def test_block_size_validation(self):
        matrix = GF2Matrix.identity(4)
        self.assertRaises(ValueError, lambda: matrix.reduce(block_size=0))
        self.assertRaises(ValueError, lambda: matrix.reduce(block_size=17))

    def test_identity(self):
        self.assertEqual(70, GF2Matrix.identity(70).rank())

    def test_kernel(self):
        for m, n in [(10, 25), (25, 10), (40, 100)]:
            dense = random_dense(self.rng, m, n)
            matrix = GF2Matrix.from_dense(dense)
            kernel = matrix.kernel()
            self.assertEqual(n - matrix.rank(), kernel.nrows)
            self.assertEqual(kernel.nrows, kernel.rank())
            for v in kernel.to_int_rows():
                self.assertEqual(0, matrix.multiply_vector(v))

    def test_kernel_matches_naive_dimension(self):
        dense = random_dense(self.rng, 12, 40)
        self.assertEqual(gf2.naive_nullspace(dense).shape[0], GF2Matrix.from_dense(dense).kernel().nrows)

    def test_add_and_transpose(self):
        a = GF2Matrix.from_dense(random_dense(self.rng, 6, 9))
        self.assertEqual(GF2Matrix.zeros(6, 9), a + a)
        self.assertEqual(a, a.transpose().transpose())
        self.assertRaises(ValueError, lambda: a + GF2Matrix.zeros(9, 6))

    def test_matmul(self):
        a = random_dense(self.rng, 5, 7)
        b = random_dense(self.rng, 7, 3)
        product = GF2Matrix.from_dense(a).matmul(GF2Matrix.from_dense(b))
        np.testing.assert_array_equal((a.astype(int) @ b.astype(int)) % 2, product.to_dense())
        self.assertRaises(ValueError, lambda: GF2Matrix.from_dense(a).matmul(GF2Matrix.from_dense(a)))

    def test_multiply_vector(self):
        matrix = GF2Matrix.from_int_rows([0b011, 0b110], 3)
        self.assertEqual(0b01, matrix.multiply_vector(0b001))
        self.assertEqual(0b11, matrix.multiply_vector(0b010))
        self.assertEqual(0, matrix.multiply_vector(0b111))

    def test_row_space_contains(self):
        matrix = GF2Matrix.from_int_rows([0b0011, 0b0110], 4)
        self.assertTrue(matrix.row_space_contains(0b0101))
        self.assertFalse(matrix.row_space_contains(0b1000))

    def test_str(self):
        self.assertEqual('10\n01', str(GF2Matrix.identity(2)))


class TestSubspaces(unittest.TestCase):

    def test_intersect(self):
        a = GF2Matrix.from_int_rows([0b0011, 0b0100], 4)
        b = GF2Matrix.from_int_rows([0b0111, 0b1000], 4)
        meet = gf2.intersect(a, b)
        self.assertEqual(1, meet.nrows)
        self.assertListEqual([0b0111], meet.to_int_rows())

    def test_intersect_dimension_formula(self):
        rng = np.random.default_rng(3)
        for _ in range(500):
            a = GF2Matrix.from_dense(random_dense(rng, 6, 12))
            b = GF2Matrix.from_dense(random_dense(rng, 7, 12))
            meet = gf2.intersect(a, b)
            self.assertEqual(a.rank() + b.rank() - gf2.sum_space(a, b).nrows, meet.rank())
            for v in meet.to_int_rows():
                self.assertTrue(a.row_space_contains(v))
                self.assertTrue(b.row_space_contains(v))

    def test_intersect_column_mismatch(self):
        self.assertRaises(ValueError, lambda: gf2.intersect(GF2Matrix.zeros(1, 3), GF2Matrix.zeros(1, 4)))


class TestIncrementalSpan(unittest.TestCase):

    def test_insert(self):
        span = IncrementalSpan(4)
        self.assertTrue(span.insert(0b0011))
        self.assertTrue(span.insert(0b0110))
        self.assertFalse(span.insert(0b0101))
        self.assertFalse(span.insert(0))
        self.assertEqual(2, span.rank)
        self.assertEqual(4, span.generator_count)
        self.assertListEqual([1, 2], span.pivots)

    def test_pivots_are_leading_bits(self):
        span = gf2.span_of([0b1001, 0b1100], 4)
        self.assertTrue(span.is_pivot(3))
        self.assertTrue(span.is_pivot(2))
        self.assertFalse(span.is_pivot(0))

    def test_reduce_vector(self):
        span = gf2.span_of([0b1001, 0b0110], 4)
        residual, _ = span.reduce_vector(0b1111)
        self.assertEqual(0, residual)
        residual, _ = span.reduce_vector(0b1000)
        self.assertEqual(0b0001, residual)

    def test_tracked_combination(self):
        rows = [0b00011, 0b00110, 0b01100, 0b11000]
        span = IncrementalSpan(5, track=True)
        for row in rows:
            span.insert(row)
        member, combination = span.member(0b10001)
        self.assertTrue(member)
        total = 0
        for i in gf2.combination_indices(combination):
            total ^= rows[i]
        self.assertEqual(0b10001, total)

    def test_tracked_reduction_certifies(self):
        rng = np.random.default_rng(8)
        rows = [int(x) for x in rng.integers(0, 1 << 20, size=15)]
        span = IncrementalSpan(20, track=True)
        for row in rows:
            span.insert(row)
        for v in (int(x) for x in rng.integers(0, 1 << 20, size=500)):
            residual, combination = span.reduce_vector(v)
            total = residual
            for i in gf2.combination_indices(combination):
                total ^= rows[i]
            self.assertEqual(v, total)
            self.assertFalse(any(span.is_pivot(c) for c in gf2.combination_indices(residual)))

    def test_member_outside(self):
        span = gf2.span_of([0b011], 3)
        self.assertEqual((False, None), span.member(0b100))
        self.assertFalse(span.contains(0b001))

    def test_vector_too_wide(self):
        span = IncrementalSpan(3)
        self.assertRaises(ValueError, lambda: span.insert(0b1000))
        self.assertRaises(ValueError, lambda: IncrementalSpan(-1))

    def test_rank_matches_matrix(self):
        rng = np.random.default_rng(21)
        dense = random_dense(rng, 40, 80, 0.2)
        matrix = GF2Matrix.from_dense(dense)
        self.assertEqual(matrix.rank(), gf2.span_of(matrix.to_int_rows(), 80).rank)

    def test_combination_indices(self):
        self.assertListEqual([0, 2, 5], gf2.combination_indices(0b100101))
        self.assertListEqual([], gf2.combination_indices(0))
