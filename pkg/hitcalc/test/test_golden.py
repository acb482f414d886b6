import os
import tempfile
import unittest

from hitcalc import core, golden
from hitcalc.core import Monomial
from hitcalc.exceptions import DegreeMismatchException, GoldenDataException
from hitcalc.golden import CountCheck, ExponentExpression, SetCheck, ValidityRange

STRETCH = os.environ.get('HITCALC_STRETCH') is not None


class TestExponentExpression(unittest.TestCase):

    def test_evaluate(self):
        self.assertEqual(7, ExponentExpression.parse('2^{t+1}-1').evaluate(2))
        self.assertEqual(14, ExponentExpression.parse('2^t-2').evaluate(4))
        self.assertEqual(3, ExponentExpression.parse(' 2^t + 2^t - 1 ').evaluate(1))
        self.assertEqual(5, ExponentExpression.parse('5').evaluate(9))

    def test_is_constant(self):
        self.assertTrue(ExponentExpression.parse('5').is_constant())
        self.assertFalse(ExponentExpression.parse('2^t-1').is_constant())
        self.assertTrue(ExponentExpression.parse('2^t-2^t+3').is_constant())

    def test_equality(self):
        self.assertEqual(ExponentExpression.parse('2^t-1'), ExponentExpression.parse(' 2^t - 1 '))
        self.assertEqual(ExponentExpression.parse('1+2^t'), ExponentExpression.parse('2^t+1'))

    def test_unexpected_character(self):
        with self.assertRaises(GoldenDataException) as context:
            ExponentExpression.parse('2^t*1', line=3, column=10)
        self.assertEqual(3, context.exception.line)
        self.assertEqual(13, context.exception.column)
        self.assertIn("'*'", str(context.exception))

    def test_missing_operator(self):
        with self.assertRaises(GoldenDataException) as context:
            ExponentExpression.parse('2^t 1', line=1, column=1)
        self.assertEqual(5, context.exception.column)

    def test_leading_operator(self):
        with self.assertRaises(GoldenDataException) as context:
            ExponentExpression.parse('-1', line=1, column=4)
        self.assertEqual(4, context.exception.column)

    def test_trailing_operator(self):
        with self.assertRaises(GoldenDataException) as context:
            ExponentExpression.parse('2^t-', line=2, column=1)
        self.assertEqual(5, context.exception.column)

    def test_empty(self):
        self.assertRaises(GoldenDataException, lambda: ExponentExpression.parse('  '))


class TestValidityRange(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(ValidityRange(2, True), ValidityRange.parse('t=2'))
        self.assertEqual(ValidityRange(4, False), ValidityRange.parse(' t >= 4 '))

    def test_contains(self):
        self.assertTrue(ValidityRange(2, True).contains(2))
        self.assertFalse(ValidityRange(2, True).contains(3))
        self.assertTrue(ValidityRange(4, False).contains(7))
        self.assertFalse(ValidityRange(4, False).contains(3))

    def test_invalid(self):
        self.assertRaises(GoldenDataException, lambda: ValidityRange.parse('t>0'))
        self.assertRaises(GoldenDataException, lambda: ValidityRange.parse('t=0'))
        self.assertRaises(GoldenDataException, lambda: ValidityRange.parse('s=1'))

    def test_str(self):
        self.assertEqual('t>=4', str(ValidityRange(4, False)))
        self.assertEqual('t=1', str(ValidityRange(1, True)))


class TestParsing(unittest.TestCase):

    def test_parse_line(self):
        family = golden.parse_family_line('q; 1; 0,0,2^t-1,2^t-1,2^{t+1}-1; t>=1', 17)
        self.assertEqual('q_1', family.name())
        self.assertEqual(5, family.s)
        self.assertEqual(17, family.line)
        self.assertEqual((0, 0, 3, 3, 7), family.instantiate(2))

    def test_error_position(self):
        with self.assertRaises(GoldenDataException) as context:
            golden.parse_family_line('q; 1; 0,0,2^t-1,2^t*1,2^{t+1}-1; t>=1', 7)
        self.assertEqual(7, context.exception.line)
        self.assertEqual(20, context.exception.column)

    def test_field_count(self):
        with self.assertRaises(GoldenDataException) as context:
            golden.parse_family_line('q; 1; 0,0,1', 2)
        self.assertEqual(1, context.exception.column)

    def test_unknown_label(self):
        self.assertRaises(GoldenDataException, lambda: golden.parse_family_line('x; 1; 1,1,1,1,1; t=1'))

    def test_invalid_index(self):
        with self.assertRaises(GoldenDataException) as context:
            golden.parse_family_line('q; a; 1,1,1,1,1; t=1', 4)
        self.assertEqual(3, context.exception.column)
        self.assertRaises(GoldenDataException, lambda: golden.parse_family_line('q; 0; 1,1,1,1,1; t=1'))

    def test_invalid_range_position(self):
        with self.assertRaises(GoldenDataException) as context:
            golden.parse_family_line('b; 1; 1,1,1,1,1; t>0', 4)
        self.assertEqual(17, context.exception.column)

    def test_comments_and_blank_lines(self):
        families = golden.parse_families(['# comment\n', '\n', 'b; 1; 1,1,1,1,1; t=1\n'])
        self.assertEqual(1, len(families))
        self.assertEqual(3, families[0].line)

    def test_str(self):
        text = 'q; 1; 0,0,2^t-1,2^t-1,2^{t+1}-1; t>=1'
        self.assertEqual(text, str(golden.parse_family_line(text)))


class TestInstantiation(unittest.TestCase):

    def setUp(self):
        self.families = golden.load_families()

    def test_counts(self):
        self.assertEqual(45, len(golden.instantiate(self.families, 1, 'q')))
        self.assertEqual(1, len(golden.instantiate(self.families, 1, 'b')))
        self.assertEqual(145, len(golden.instantiate(self.families, 2, 'q')))
        self.assertEqual(60, len(golden.instantiate(self.families, 2, 'b')))
        self.assertEqual(23, len(golden.instantiate(self.families, 2, 'u')))
        for t in range(3, 7):
            u_t, v_t = golden.family_counts(t)
            self.assertEqual(u_t, len(golden.instantiate(self.families, t, 'q')), t)
            self.assertEqual(v_t, len(golden.instantiate(self.families, t, 'b')), t)

    def test_family_counts(self):
        self.assertEqual((45, 1), golden.family_counts(1))
        self.assertEqual((145, 60), golden.family_counts(2))
        self.assertEqual((195, 260), golden.family_counts(3))
        self.assertEqual((195, 270), golden.family_counts(4))
        self.assertRaises(ValueError, lambda: golden.family_counts(0))

    def test_degrees_and_weights(self):
        for t in range(2, 6):
            for label in ('q', 'b'):
                for m in golden.instantiate(self.families, t, label):
                    self.assertEqual(core.family_degree(t), m.degree)
                    self.assertEqual(core.family_weight(t), core.weight_vector(m))

    def test_positive_part(self):
        for m in golden.instantiate(self.families, 3, 'b'):
            self.assertTrue(core.is_positive(m))
        for m in golden.instantiate(self.families, 3, 'q'):
            self.assertFalse(core.is_positive(m))

    def test_unknown_label(self):
        self.assertRaises(ValueError, lambda: golden.instantiate(self.families, 2, 'z'))

    def test_out_of_range(self):
        family = golden.parse_family_line('b; 1; 1,1,1,1,1; t=1')
        self.assertRaises(ValueError, lambda: family.instantiate(2))

    def test_negative_exponent(self):
        family = golden.parse_family_line('q; 1; 0,0,2^t-3,2^t+2,2^{t+1}; t>=1')
        self.assertRaises(GoldenDataException, lambda: family.instantiate(1))

    def test_wrong_degree(self):
        family = golden.parse_family_line('b; 1; 1,1,1,1,1; t=2')
        self.assertRaises(DegreeMismatchException, lambda: family.instantiate(2))


class TestChecks(unittest.TestCase):

    def test_shipped_catalogue_passes(self):
        golden.check_families(golden.load_families(check=False))

    def test_inconsistent_weights(self):
        families = golden.parse_families(['q; 1; 3,1,1,0,0; t=1', 'q; 2; 5,0,0,0,0; t=1'])
        self.assertRaises(GoldenDataException, lambda: golden.check_families(families))

    def test_wrong_weight(self):
        families = golden.parse_families(['q; 1; 5,4,4,0,0; t=2'])
        self.assertRaises(GoldenDataException, lambda: golden.check_families(families))

    def test_load_missing_file(self):
        self.assertRaises(ValueError, lambda: golden.load_families('/nonexistent/appendix.txt'))

    def test_load_reports_position(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'bad.txt')
            with open(path, mode='w') as f:
                f.write('# header\nb; 1; 1,1,1,1,1; t=1\nb; 2; 1,1,1,1,1 t=1\n')
            with self.assertRaises(GoldenDataException) as context:
                golden.load_families(path)
            self.assertEqual(3, context.exception.line)

    def test_set_check(self):
        check = SetCheck('example', [(1, 2), (2, 1)], [(2, 1), (3, 0)])
        self.assertFalse(check.passed)
        self.assertListEqual([Monomial((1, 2))], check.missing)
        self.assertListEqual([Monomial((3, 0))], check.extra)
        self.assertIn('MISMATCH', str(check))
        self.assertEqual([[1, 2]], check.to_dict()['missing'])

    def test_count_check(self):
        self.assertTrue(CountCheck('n', 3, 3).passed)
        self.assertEqual({'name': 'n', 'passed': False, 'expected': 3, 'computed': 4}, CountCheck('n', 3, 4).to_dict())


class TestVerification(unittest.TestCase):

    def test_first_degree(self):
        report = golden.verify_against_computed(5, 1)
        self.assertTrue(report.passed, str(report))
        self.assertEqual(5, report.degree)

    def test_second_degree(self):
        report = golden.verify_against_computed(5, 2)
        self.assertTrue(report.passed, str(report))
        self.assertTrue(str(report).startswith('Verification of degree 13 (t = 2): PASS'))
        payload = report.to_dict()
        self.assertEqual(13, payload['degree'])
        self.assertTrue(all(check['passed'] for check in payload['checks']))

    def test_mismatch_is_reported(self):
        families = [f for f in golden.load_families() if not (f.label == 'b' and f.k == 60)]
        with self.assertLogs('hitcalc.golden', level='WARNING'):
            report = golden.verify_against_computed(5, 2, families=families)
        self.assertFalse(report.passed)
        names = [check.name for check in report.failures()]
        self.assertIn('v_t', names)
        missing = [check for check in report.failures() if isinstance(check, SetCheck)]
        self.assertEqual(1, len(missing))
        self.assertEqual(1, len(missing[0].extra))

    def test_five_variables_only(self):
        self.assertRaises(ValueError, lambda: golden.verify_against_computed(4, 2))

    @unittest.skipUnless(STRETCH, 'set HITCALC_STRETCH to verify degree 29')
    def test_third_degree(self):
        report = golden.verify_against_computed(5, 3)
        self.assertTrue(report.passed, str(report))
