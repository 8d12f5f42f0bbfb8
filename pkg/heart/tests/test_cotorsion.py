from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

from category import FAIL, PASS, SKIPPED
from extri import Caps
from extri.tests.test_structure import dual_number_structure, point_table
from extri.tests.test_stable import stable_cyclic_nakayama
from heart import (CotorsionPair, CotorsionError, is_cotorsion_pair, enumerate_cotorsion_pairs,
                   perpendicular_v, hom_vanishing, star)

CAPS = Caps(mult=1, samples=5, module_dim=3, perp_samples=6, random_maps=4)


def fix_u(structure) -> CotorsionPair:
    """(add S1, add(S1 + S1[1])) on the stable cyclic Nakayama category."""
    return CotorsionPair(structure, ('S1',), ('S1', structure.shift_label('S1')))


class TestCotorsionPairs(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.structure = stable_cyclic_nakayama()
        cls.labels = cls.structure.labels

    def test_trivial_pairs(self):
        for u, v in [(self.labels, ()), ((), self.labels)]:
            report = is_cotorsion_pair(self.structure, u, v, CAPS)
            self.assertTrue(report.passed, report.to_json())
            self.assertEqual(sorted(report.data['decompositions']), sorted(self.labels))

    def test_fix_u(self):
        pair = fix_u(self.structure)
        self.assertEqual(pair.w, ('S1',))
        self.assertEqual(perpendicular_v(self.structure, pair.u), pair.v)
        report = is_cotorsion_pair(self.structure, pair.u, pair.v, CAPS)
        self.assertTrue(report.passed, report.to_json())
        for x, decomposition in report.data['decompositions'].items():
            self.assertTrue(set(decomposition.u) <= set(pair.u), x)
            self.assertTrue(set(decomposition.v) <= set(pair.v), x)

    def test_hom_vanishing_fails(self):
        v = self.structure.unshift_label('S1')
        self.assertEqual(hom_vanishing(self.structure, ['S1'], [v]), [['S1', v]])
        report = is_cotorsion_pair(self.structure, ['S1'], [v], CAPS)
        self.assertFalse(report.passed)
        self.assertEqual(report.statuses(), {'hom_vanishing': FAIL, 'decompositions': SKIPPED})

    def test_everything_is_rejected(self):
        report = is_cotorsion_pair(self.structure, self.labels, self.labels, CAPS)
        self.assertEqual(report.statuses()['hom_vanishing'], FAIL)

    def test_missing_decomposition(self):
        # with V = 0 only the objects of U decompose
        report = is_cotorsion_pair(self.structure, ['S1'], [], CAPS)
        self.assertEqual(report.statuses(), {'hom_vanishing': PASS, 'decompositions': FAIL})
        self.assertEqual(report.failures()[0].witness, {'objects': [x for x in self.labels if x != 'S1']})
        self.assertTrue(report.failures()[0].exhaustive)

    def test_enumeration(self):
        pairs = enumerate_cotorsion_pairs(self.structure, CAPS)
        keys = {pair.key for pair in pairs}
        self.assertEqual(len(pairs), 8)
        self.assertEqual(len(keys), 8)
        self.assertIn((self.labels, ()), keys)
        self.assertIn(((), self.labels), keys)
        u = fix_u(self.structure)
        self.assertIn(u.key, keys)
        for n in (1, 2):
            self.assertIn((u.shifted(u.u, n), u.shifted(u.v, n)), keys)
        for pair in pairs:
            self.assertEqual(hom_vanishing(self.structure, pair.u, pair.v), [])
            self.assertTrue(pair.evidence.passed)

    def test_size_guard(self):
        with self.assertRaises(CotorsionError):
            enumerate_cotorsion_pairs(self.structure, Caps(mult=1, max_objects=2))

    def test_point_table_has_only_trivial_pairs(self):
        table = point_table()
        keys = {pair.key for pair in enumerate_cotorsion_pairs(table, CAPS)}
        self.assertEqual(keys, {(('X',), ()), ((), ('X',))})

    def test_star(self):
        s = self.structure
        a = s.unshift_label('S1')
        self.assertEqual(star(s, [a], [], CAPS), ((a,), True))
        self.assertEqual(star(s, [], ['S1'], CAPS), (('S1',), True))
        self.assertEqual(star(s, [], [], CAPS), ((), True))
        found, exhaustive = star(s, [a], ['S1'], CAPS)
        self.assertEqual(set(found), {a, 'S1'})
        self.assertTrue(exhaustive)

    def test_invalid_pairs(self):
        with self.assertRaises(CotorsionError):
            CotorsionPair(dual_number_structure(), (), ())
        with self.assertRaises(CotorsionError):
            CotorsionPair(self.structure, ('S9',), ())

    def test_shifts(self):
        pair = fix_u(self.structure)
        s = self.structure
        self.assertEqual(pair.shifted(pair.u, -1), (s.unshift_label('S1'),))
        self.assertEqual(set(pair.shifted(pair.v, 1)), {s.shift_label(x) for x in pair.v})
        self.assertEqual(pair.u_structure(-1).labels, (s.unshift_label('S1'),))
