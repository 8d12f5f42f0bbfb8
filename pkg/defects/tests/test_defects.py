from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

from linalg import PrimeField
from category import FAIL, PASS
from functors import simple, yoneda, zero_module, are_isomorphic
from extri import Caps
from extri.tests.test_structure import dual_number_structure, projectives_of_a2
from extri.tests.test_stable import stable_cyclic_nakayama
from defects import (defect, defect_image, is_effaceable, DeflationIndex, def_simples,
                     verify_serre, verify_eff_equals_def, indecomposable_modules,
                     is_left_exact, perp_test, verify_perp_equals_lex)

F5 = PrimeField(5)

CAPS = Caps(mult=1, module_dim=3, samples=5, random_maps=4, perp_samples=6)


class TestDefects(TestCase):
    """mod k[x]/(x^2): Σ = {S}."""

    @classmethod
    def setUpClass(cls):
        cls.structure = dual_number_structure()
        cls.deflations = DeflationIndex(cls.structure, CAPS)
        cls.modules, cls.exhaustive = indecomposable_modules(cls.structure, CAPS)

    def test_defect_of_almost_split_sequence(self):
        t = self.structure.realize('S', 'S', F5.vector([1]))
        d = defect(t)
        self.assertEqual(d.dims, {'S': 1, 'P': 0})
        self.assertTrue(are_isomorphic(d, defect_image(self.structure, t)))

    def test_split_defect_vanishes(self):
        t = self.structure.split_triangle('S', 'P')
        self.assertTrue(defect(t).is_zero())
        self.assertTrue(defect_image(self.structure, t).is_zero())

    def test_effaceable(self):
        c = self.structure.category
        self.assertTrue(is_effaceable(zero_module(c), self.structure, CAPS, self.deflations))
        result = is_effaceable(simple(c, 'S'), self.structure, CAPS, self.deflations)
        self.assertTrue(result.effaceable)
        self.assertTrue(result.exhaustive)
        self.assertEqual(len(result.witnesses['S']), 1)
        self.assertNotIn('S', result.witnesses['S'][0])

    def test_representable_is_not_effaceable(self):
        c = self.structure.category
        result = is_effaceable(yoneda(c, 'P'), self.structure, CAPS, self.deflations)
        self.assertFalse(result)
        self.assertIsNotNone(result.failure)
        self.assertFalse(is_effaceable(simple(c, 'P'), self.structure, CAPS, self.deflations))

    def test_def_simples(self):
        self.assertEqual(def_simples(self.structure), ('S',))

    def test_serre(self):
        report = verify_serre(self.structure, ('S',), CAPS, self.modules, self.deflations)
        self.assertTrue(report.passed, report.to_json())

    def test_wrong_sigma(self):
        report = verify_serre(self.structure, ('P',), CAPS, self.modules, self.deflations)
        self.assertFalse(report.passed)
        self.assertEqual(report.statuses()['simples'], FAIL)
        self.assertEqual(report.statuses()['members'], FAIL)

    def test_eff_equals_def(self):
        report = verify_eff_equals_def(self.structure, ('S',), CAPS, self.modules, self.deflations)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.statuses()['indecomposables'], PASS)

    def test_representables_are_left_exact(self):
        c = self.structure.category
        for x in c.labels:
            self.assertTrue(is_left_exact(yoneda(c, x), self.structure, CAPS, self.deflations))
            self.assertTrue(perp_test(yoneda(c, x), ('S',)))
        self.assertTrue(is_left_exact(zero_module(c), self.structure, CAPS, self.deflations))
        self.assertFalse(is_left_exact(simple(c, 'S'), self.structure, CAPS, self.deflations))
        self.assertFalse(perp_test(simple(c, 'S'), ('S',)))

    def test_perp_equals_lex(self):
        report = verify_perp_equals_lex(self.structure, ('S',), CAPS, self.modules,
                                        deflations=self.deflations)
        self.assertTrue(report.passed, report.to_json())


class TestSplitDefects(TestCase):
    """The projectives of A2 with the split structure: def C = 0."""

    @classmethod
    def setUpClass(cls):
        cls.structure = projectives_of_a2()

    def test_sigma_is_empty(self):
        self.assertEqual(def_simples(self.structure), ())

    def test_serre(self):
        report = verify_serre(self.structure, (), CAPS)
        self.assertTrue(report.passed, report.to_json())

    def test_nothing_nonzero_is_effaceable(self):
        c = self.structure.category
        for x in c.labels:
            self.assertFalse(is_effaceable(simple(c, x), self.structure, CAPS))


class TestTriangulatedDefects(TestCase):
    """The stable category of the cyclic Nakayama algebra: def T = mod T."""

    @classmethod
    def setUpClass(cls):
        cls.structure = stable_cyclic_nakayama()
        cls.deflations = DeflationIndex(cls.structure, CAPS)

    def test_sigma_is_everything(self):
        self.assertEqual(def_simples(self.structure), self.structure.labels)

    def test_rotation_defect(self):
        s = self.structure
        x = s.labels[0]
        t = s.realize(x, s.unshift_label(x), F5.vector([1]))
        d = defect(t)
        self.assertFalse(d.is_zero())
        self.assertTrue(are_isomorphic(d, defect_image(s, t)))

    def test_simples_are_effaceable(self):
        c = self.structure.category
        for x in c.labels:
            self.assertTrue(is_effaceable(simple(c, x), self.structure, CAPS, self.deflations))

    def test_only_zero_is_left_exact(self):
        c = self.structure.category
        for x in c.labels:
            self.assertFalse(is_left_exact(yoneda(c, x), self.structure, CAPS, self.deflations))
        self.assertTrue(is_left_exact(zero_module(c), self.structure, CAPS, self.deflations))
        report = verify_perp_equals_lex(self.structure, self.structure.labels, CAPS,
                                        [simple(c, x) for x in c.labels], deflations=self.deflations)
        self.assertTrue(report.passed, report.to_json())
