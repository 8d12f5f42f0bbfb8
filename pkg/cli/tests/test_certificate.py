from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

import json
import os
import tempfile

from category import FAIL, PASS, SKIPPED
from cli import Certificate, Options, run, EXIT_PASS, EXIT_FAIL
from cli.commands import replay

SAMPLING = 'samples=10,random_maps=10,perp_samples=6'
FAST = Options(caps=SAMPLING)


def fixture(name: str) -> str:
    return os.path.join(FIXTURES_DIRECTORY, name)


class TestCertificate(TestCase):

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def write(self, certificate: Certificate, name: str) -> str:
        path = os.path.join(self.directory.name, name)
        with open(path, 'w', encoding='utf-8') as file:
            file.write(certificate.dumps())
        return path

    def test_deterministic(self):
        first = run('validate', fixture('fix_a.json'), FAST).dumps()
        second = run('validate', fixture('fix_a.json'), FAST).dumps()
        self.assertEqual(first, second)
        data = json.loads(first)
        self.assertEqual(data['tool'], 'defectlab')
        self.assertEqual(data['command'], 'validate')
        self.assertEqual(len(data['input']['sha256']), 64)
        self.assertNotIn('timing', data)
        self.assertTrue(data['passed'])

    def test_timing(self):
        certificate = run('validate', fixture('fix_a.json'), Options(caps=SAMPLING, timing=True))
        self.assertIn('timing', certificate.to_json())
        self.assertIn('time', certificate.to_text())

    def test_round_trip(self):
        certificate = run('verify-theorem-b', fixture('fix_t_corrupted_heart.json'), FAST)
        again = Certificate.from_json(json.loads(certificate.dumps()))
        self.assertEqual(again.to_json(), certificate.to_json())

    def test_failures_carry_replay(self):
        certificate = run('verify-theorem-b', fixture('fix_t_corrupted_heart.json'), FAST)
        self.assertEqual(certificate.exit_code, EXIT_FAIL)
        failures = certificate.report.failures()
        self.assertTrue(failures)
        for result in failures:
            self.assertIsNotNone(result.witness)
            self.assertEqual(result.replay, {'command': 'verify-theorem-b', 'check': result.name})

    def test_replay_reproduces_failures(self):
        certificate = run('verify-theorem-b', fixture('fix_t_corrupted_heart.json'), FAST)
        result = replay(self.write(certificate, 'heart.json'))
        self.assertTrue(result.passed, result.report.statuses())
        self.assertEqual(set(result.report.statuses()), {r.name for r in certificate.report.failures()})
        self.assertEqual(result.digest, certificate.digest)

    def test_replay_wrong_sigma(self):
        certificate = run('quotient', fixture('fix_a.json'), Options(caps=SAMPLING, sigma=()))
        self.assertFalse(certificate.passed)
        self.assertEqual(certificate.options['sigma'], [])
        result = replay(self.write(certificate, 'sigma.json'))
        self.assertTrue(result.passed)

    def test_replay_detects_changed_witness(self):
        certificate = run('verify-theorem-b', fixture('fix_t_corrupted_heart.json'), FAST)
        data = json.loads(certificate.dumps())
        for check in data['checks']:
            if check['status'] == FAIL:
                check['witness'] = {'forged': True}
        path = os.path.join(self.directory.name, 'forged.json')
        with open(path, 'w', encoding='utf-8') as file:
            json.dump(data, file)
        result = replay(path)
        self.assertFalse(result.passed)

    def test_replay_without_failures(self):
        certificate = run('validate', fixture('fix_a.json'), FAST)
        self.assertEqual(certificate.exit_code, EXIT_PASS)
        result = replay(self.write(certificate, 'pass.json'))
        self.assertEqual(result.report.statuses(), {'failures': SKIPPED})
        self.assertTrue(result.passed)

    def test_text(self):
        text = run('def-simples', fixture('fix_t.json'), FAST).to_text()
        self.assertIn('sigma_criterion', text)
        self.assertIn(PASS, text)
        self.assertTrue(text.splitlines()[-1].endswith('0 failed, 0 skipped'))
