from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

import os

import pytest

from category import FAIL, PASS, SKIPPED
from cli import COMMANDS, Options, LoadError, UsageError, load, run, selftest, parse_pair
from cli.checks import lex_suite

# Fewer random samples; dimensions and exhaustive ranges stay at the fixture values.
SAMPLING = 'samples=10,random_maps=10,perp_samples=6'
FAST = Options(caps=SAMPLING)


def fixture(name: str) -> str:
    return os.path.join(FIXTURES_DIRECTORY, name)


class TestCommands(TestCase):

    @pytest.mark.slow
    def test_selftest(self):
        report = selftest(directory=FIXTURES_DIRECTORY)
        self.assertTrue(report.passed, [r.to_json() for r in report.failures()])
        self.assertIn('fix_t:cotorsion-enumerate', report.statuses())
        self.assertIn('fix_a2:def-simples', report.statuses())
        self.assertIn('fix_a:quotient:F101', report.statuses())
        self.assertIn('fix_corrupted:validate:negative', report.statuses())

    def test_selftest_sampled(self):
        entries = [('fix_a2.json', 'def-simples', {}, {'sigma': ['S1']}),
                   ('fix_t.json', 'verify-theorem-b', {'field': '101'}, True),
                   ('fix_missing_cone.json', 'validate', {}, 'load_error')]
        report = selftest(FAST, entries=entries, directory=FIXTURES_DIRECTORY)
        self.assertTrue(report.passed, [r.to_json() for r in report.failures()])

    def test_selftest_reports_wrong_expectations(self):
        entries = [('fix_a.json', 'def-simples', {}, {'sigma': []}),
                   ('fix_a.json', 'validate', {}, 'load_error'),
                   ('fix_dangling.json', 'validate', {}, True)]
        report = selftest(FAST, entries=entries, directory=FIXTURES_DIRECTORY)
        self.assertEqual(set(report.statuses().values()), {FAIL})
        self.assertEqual(report.failures()[0].witness['got'], {'sigma': ['SA']})

    def test_validate(self):
        certificate = run('validate', fixture('fix_t.json'), FAST)
        self.assertTrue(certificate.passed)
        self.assertEqual(certificate.report.data['structure']['backend'], 'stable')
        certificate = run('validate', fixture('fix_corrupted.json'), FAST)
        self.assertFalse(certificate.passed)
        self.assertEqual(certificate.report.statuses()['validate/associativity'], FAIL)

    def test_def_simples(self):
        expected = {'fix_a.json': ['SA'], 'fix_a2.json': ['S1'], 'fix_p.json': [], 'fix_t.json': ['S1', 'S2', 'S3']}
        for name, sigma in expected.items():
            certificate = run('def-simples', fixture(name), FAST)
            self.assertTrue(certificate.passed, name)
            self.assertEqual(certificate.report.data['sigma'], sigma, name)
        data = run('def-simples', fixture('fix_t.json'), FAST).report.data
        self.assertTrue(all(v['effaceable'] for v in data['effaceable'].values()))

    def test_def_simples_over_f101(self):
        options = Options(caps=SAMPLING, field='101')
        self.assertEqual(run('def-simples', fixture('fix_a.json'), options).report.data['sigma'], ['SA'])
        self.assertEqual(run('def-simples', fixture('fix_a2.json'), options).report.data['sigma'], ['S1'])

    def test_defects(self):
        certificate = run('defects', fixture('fix_a.json'), FAST)
        self.assertTrue(certificate.passed)
        self.assertEqual(certificate.report.statuses()['defect_image'], PASS)
        self.assertTrue(certificate.report.data['defects'])

    def test_quotient(self):
        certificate = run('quotient', fixture('fix_a.json'), FAST)
        self.assertTrue(certificate.passed)
        self.assertEqual(certificate.report.data['quotient']['sigma'], ['SA'])
        wrong = run('quotient', fixture('fix_a.json'), Options(caps=SAMPLING, sigma=()))
        self.assertFalse(wrong.passed)
        with self.assertRaises(UsageError):
            run('quotient', fixture('fix_a.json'), Options(caps=SAMPLING, sigma=('S9',)))

    def test_quotient_over_f101(self):
        certificate = run('quotient', fixture('fix_a.json'), Options(caps=SAMPLING, field='101'))
        self.assertTrue(certificate.passed)
        self.assertEqual(certificate.options['field'], '101')
        self.assertFalse(certificate.report.exhaustive)

    def test_theorem_a(self):
        expected = {'fix_a.json': (True, True), 'fix_p.json': (True, False), 'fix_t.json': (False, False)}
        for field in (None, '101'):
            for name, (exact, abelian) in expected.items():
                certificate = run('theorem-a', fixture(name), Options(caps=SAMPLING, field=field))
                self.assertTrue(certificate.passed, (name, field))
                self.assertEqual(certificate.report.data['is_exact_embedding'], exact, (name, field))
                self.assertEqual(certificate.report.data['is_abelian_equivalence'], abelian, (name, field))
                self.assertEqual(list(certificate.report.statuses()), ['consistency'])

    def test_lex(self):
        certificate = run('lex', fixture('fix_t.json'), FAST)
        self.assertTrue(certificate.passed)
        self.assertIn('approximation/modules', certificate.report.statuses())

    def test_lex_without_pair(self):
        # 0 is the only projective and it covers every object
        loaded = load(fixture('fix_t.json'), caps=SAMPLING)
        report = lex_suite(loaded.structure, loaded.caps)
        self.assertTrue(report.passed)
        self.assertEqual(report.statuses()['approximation/modules'], PASS)

    def test_cotorsion_enumerate(self):
        certificate = run('cotorsion-enumerate', fixture('fix_t.json'), FAST)
        self.assertTrue(certificate.passed)
        self.assertEqual(certificate.report.data['count'], 8)
        limited = run('cotorsion-enumerate', fixture('fix_t.json'), Options(caps='max_objects=2,' + SAMPLING))
        self.assertEqual(limited.report.statuses(), {'enumeration': FAIL})
        with self.assertRaises(UsageError):
            run('cotorsion-enumerate', fixture('fix_a.json'), FAST)

    def test_heart(self):
        certificate = run('heart', fixture('fix_t.json'), FAST)
        self.assertTrue(certificate.passed, certificate.report.statuses())
        self.assertEqual(certificate.report.data['heart']['objects'], ['S2'])

    def test_heart_of_a_non_pair(self):
        options = Options(caps=SAMPLING, pair=parse_pair(['U=S1', 'V=S2']))
        certificate = run('heart', fixture('fix_t.json'), options)
        self.assertFalse(certificate.passed)
        self.assertEqual(certificate.report.statuses()['heart'], SKIPPED)

    def test_theorem_b(self):
        for field in (None, '101'):
            self.assertTrue(run('verify-theorem-b', fixture('fix_t.json'), Options(caps=SAMPLING, field=field)).passed)
        corrupted = run('verify-theorem-b', fixture('fix_t_corrupted_heart.json'), FAST)
        self.assertFalse(corrupted.passed)
        self.assertIn(FAIL, corrupted.report.statuses().values())

    def test_heart_vs_mod_p(self):
        certificate = run('heart-vs-mod-p', fixture('fix_t.json'), FAST)
        self.assertTrue(certificate.passed)

    def test_usage(self):
        with self.assertRaises(UsageError):
            run('frobnicate', fixture('fix_a.json'))
        with self.assertRaises(UsageError):
            run('validate', None)
        with self.assertRaises(LoadError):
            run('heart', fixture('fix_a.json'), FAST)
        with self.assertRaises(LoadError):
            run('defects', fixture('fix_corrupted.json'), FAST)
        self.assertEqual(set(COMMANDS) & {'selftest', 'replay'}, set())

    def test_parse_pair(self):
        spec = parse_pair(['U=S1', 'V=S1,S3'])
        self.assertEqual(spec.u, ['S1'])
        self.assertEqual(spec.v, ['S1', 'S3'])
        self.assertEqual(parse_pair(['u=', 'v=S2']).u, [])
        with self.assertRaises(UsageError):
            parse_pair(['W=S1'])
