from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

from linalg import PrimeField
from category import FormalObject, Quiver
from functors import yoneda
from extri import Caps, StableStructure, StructureError

F5 = PrimeField(5)


def cyclic_nakayama(field=F5):
    """Three vertices on a cycle, radical square zero."""
    quiver = Quiver(['1', '2', '3'], [('a', '1', '2'), ('b', '2', '3'), ('c', '3', '1')], bound=1)
    return quiver.vertex_category(field)


def stable_cyclic_nakayama(field=F5) -> StableStructure:
    return StableStructure.from_algebra(cyclic_nakayama(field), 1)


class TestStable(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.structure = stable_cyclic_nakayama()

    def test_objects(self):
        s = self.structure
        self.assertEqual(len(s.labels), 3)
        for x in s.labels:
            self.assertEqual(s.modules.module(x).total_dim, 1)

    def test_shift_is_a_cycle(self):
        s = self.structure
        shifts = {x: s.shift_label(x) for x in s.labels}
        self.assertEqual(sorted(shifts.values()), sorted(s.labels))
        for x in s.labels:
            self.assertNotEqual(shifts[x], x)
            self.assertEqual(shifts[shifts[shifts[x]]], x)
            self.assertEqual(s.unshift_label(shifts[x]), x)
        self.assertTrue(s.verify_shift().passed)

    def test_stable_homs(self):
        s = self.structure
        for x in s.labels:
            for y in s.labels:
                self.assertEqual(s.category.hom_dim(x, y), 1 if x == y else 0)
        self.assertEqual(s.category.total_dimension(), 3)

    def test_e_space(self):
        s = self.structure
        for x in s.labels:
            for z in s.labels:
                expected = s.category.hom_dim(x, s.shift_label(z))
                self.assertEqual(s.e_dim(x, z), expected)
            self.assertEqual(s.e_dim(x, s.unshift_label(x)), 1)

    def test_rotation(self):
        s = self.structure
        x = s.labels[0]
        t = s.realize(x, s.unshift_label(x), F5.vector([1]))
        self.assertTrue(t.y.is_zero)
        self.assertTrue(s.verify_long_exact(t).passed)
        split = s.realize(x, x, F5.zero_vector(s.e_dim(x, x)))
        self.assertEqual(split.y, FormalObject([x, x]))

    def test_zero_deflations(self):
        s = self.structure
        caps = Caps(mult=1)
        for x in s.labels:
            triangles, exhaustive = s.deflations_onto(x, caps)
            self.assertTrue(exhaustive)
            self.assertTrue(any(t.y.is_zero for t in triangles), x)

    def test_classify(self):
        flags = self.structure.classify_structure(Caps(mult=1))
        self.assertFalse(flags.inflations_mono)
        self.assertFalse(flags.deflations_epi)
        self.assertTrue(flags.all_morphisms_conflations)

    def test_cone_of_identity(self):
        s = self.structure
        x = s.labels[0]
        c, u, w = s.cone(s.category.identity(x))
        self.assertTrue(c.is_zero)

    def test_verify_structure(self):
        report = self.structure.verify_structure(Caps(mult=1, samples=3))
        self.assertTrue(report.passed, report.to_json())

    def test_projective_rejected(self):
        algebra = cyclic_nakayama()
        with self.assertRaises(StructureError):
            StableStructure(algebra, {'P1': yoneda(algebra, '1')})
