from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

from category import FAIL, PASS
from extri.tests.test_stable import stable_cyclic_nakayama
from heart import (CotorsionPair, Reflector, RestrictedYoneda, enumerate_cotorsion_pairs, heart_presentation,
                   cohomology, verify_cohomology, verify_theorem_b, heart_vs_mod_p)
from .test_cotorsion import CAPS, fix_u


class TestHeartPresentation(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.structure = stable_cyclic_nakayama()
        cls.labels = cls.structure.labels
        cls.pair = fix_u(cls.structure)
        cls.presentation = heart_presentation(cls.pair, CAPS)
        cls.reflector = Reflector(cls.presentation, CAPS)
        cls.below = cls.structure.unshift_label('S1')

    def test_object_sets(self):
        p = self.presentation
        self.assertEqual(p.w, ('S1',))
        self.assertEqual(set(p.t_plus), set(self.labels))
        self.assertEqual(set(p.t_minus), {'S1', self.below})
        self.assertEqual(set(p.h), {'S1', self.below})
        self.assertEqual(p.objects, (self.below,))
        self.assertTrue(p.exhaustive)
        self.assertEqual(p.hom_dims, {(self.below, self.below): 1})

    def test_trivial_hearts(self):
        for u, v in [(self.labels, ()), ((), self.labels)]:
            presentation = heart_presentation(CotorsionPair(self.structure, u, v), CAPS)
            self.assertTrue(presentation.is_zero)

    def test_reflections(self):
        for x in self.labels:
            data = self.reflector.reflection(x)
            self.assertEqual(list(data.target), [x])
            self.assertEqual(data.report.statuses(), {'adjunction': PASS, 'unit_iso': PASS})

    def test_coreflections(self):
        for x in self.presentation.t_minus:
            data = self.reflector.coreflection(x)
            self.assertEqual(list(data.target), [x])
            self.assertTrue(data.report.passed, data.report.to_json())
        above = self.structure.shift_label('S1')
        data = self.reflector.coreflection(above)
        self.assertTrue(data.target.is_zero)
        self.assertEqual(list(data.cone), [above])

    def test_cohomology_values(self):
        above = self.structure.shift_label('S1')
        self.assertTrue(cohomology(self.reflector, 'S1').heart_object.is_zero)
        self.assertTrue(cohomology(self.reflector, above).heart_object.is_zero)
        self.assertEqual(list(cohomology(self.reflector, self.below).heart_object), [self.below])

    def test_cohomological(self):
        report = verify_cohomology(self.reflector, CAPS)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.statuses()['cohomological'], PASS)

    def test_theorem_b(self):
        report = verify_theorem_b(self.presentation, CAPS)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.data['equivalence'], {self.below: [1]})

    def test_theorem_b_on_trivial_pairs(self):
        for u, v in [(self.labels, ()), ((), self.labels)]:
            presentation = heart_presentation(CotorsionPair(self.structure, u, v), CAPS)
            report = verify_theorem_b(presentation, CAPS)
            self.assertTrue(report.passed, report.to_json())

    def test_corrupted_table(self):
        corrupted = self.presentation.with_hom_dims({(self.below, self.below): 2})
        report = verify_theorem_b(corrupted, CAPS)
        self.assertEqual(report.statuses()['full_faithful'], FAIL)
        self.assertEqual(report.failures()[0].witness['pairs'][0]['heart'], 2)

    def test_mod_p(self):
        psi = RestrictedYoneda(self.pair)
        self.assertEqual(psi.info()['domain'], [self.below])
        self.assertEqual(psi.info()['sigma'], [])
        report = heart_vs_mod_p(self.presentation, CAPS, psi)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.data['projectives'], [self.below])


class TestEveryHeart(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.structure = stable_cyclic_nakayama()
        cls.pairs = enumerate_cotorsion_pairs(cls.structure, CAPS)
        cls.presentations = {pair.key: heart_presentation(pair, CAPS) for pair in cls.pairs}

    def test_rotations_of_fix_u(self):
        single = {key: p.objects for key, p in self.presentations.items() if len(key[0]) == 1}
        self.assertEqual(set(key[0] for key in single), {(x,) for x in self.structure.labels})
        for (u, _), objects in single.items():
            self.assertEqual(objects, (self.structure.unshift_label(u[0]),), u)
        self.assertEqual(set(single.values()), {('S1',), ('S2',), ('S3',)})

    def test_theorem_b(self):
        for pair in self.pairs:
            presentation = self.presentations[pair.key]
            report = verify_theorem_b(presentation, CAPS, RestrictedYoneda(pair))
            self.assertTrue(report.passed, (pair.key, report.to_json()))

    def test_cohomology(self):
        for pair in self.pairs:
            report = verify_cohomology(Reflector(self.presentations[pair.key], CAPS), CAPS)
            self.assertTrue(report.passed, (pair.key, report.to_json()))

    def test_mod_p(self):
        for pair in self.pairs:
            report = heart_vs_mod_p(self.presentations[pair.key], CAPS)
            self.assertTrue(report.passed, (pair.key, report.to_json()))
