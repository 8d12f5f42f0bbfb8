from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

import numpy as np

from linalg import PrimeField
from category import FormalObject, FAIL, PASS
from category.tests.test_category import point_category
from functors import ModuleCategory, simple, yoneda, is_projective
from functors.tests.test_module import dual_numbers, a2
from extri import (Caps, ETriangle, AbelianStructure, SubcategoryStructure, TableStructure,
                   ExtriStructure, StructureError, RealizationError, MissingConeData,
                   NotExtensionClosed, backend_class)

F5 = PrimeField(5)


def dual_number_structure(field=F5) -> AbelianStructure:
    """mod k[x]/(x^2) with its two indecomposables S and P."""
    c = dual_numbers(field)
    return AbelianStructure(ModuleCategory({'S': simple(c, 'A'), 'P': yoneda(c, 'A')}))


def projectives_of_a2(field=F5) -> SubcategoryStructure:
    parent = AbelianStructure.from_algebra(a2(field), 2)
    labels = [x for x in parent.labels if is_projective(parent.modules.module(x))]
    return SubcategoryStructure(parent, labels)


def point_table(field=F5) -> TableStructure:
    """vect with the identity shift: the cone of id_X is zero."""
    c = point_category(field)
    zero = FormalObject.zero()
    return TableStructure(c, {'X': 'X'}, {('X', 'X', 0): (zero, c.zero('X', zero), c.zero(zero, 'X'))})


class TestCaps(TestCase):

    def test_parse(self):
        caps = Caps.parse('mult=1, seed=3')
        self.assertEqual(caps.mult, 1)
        self.assertEqual(caps.seed, 3)
        self.assertEqual(caps.enum, Caps().enum)
        self.assertEqual(Caps.parse(''), Caps())

    def test_invalid(self):
        with self.assertRaises(StructureError):
            Caps.parse('colour=2')
        with self.assertRaises(StructureError):
            Caps.parse('mult=two')
        with self.assertRaises(StructureError):
            Caps.parse('mult')

    def test_rng_is_reproducible(self):
        caps = Caps(seed=7)
        first = caps.rng('deflations').integers(0, 1000, 5)
        second = caps.rng('deflations').integers(0, 1000, 5)
        self.assertTrue(np.array_equal(first, second))


class TestAbelian(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.structure = dual_number_structure()
        cls.triangle = cls.structure.realize('S', 'S', F5.vector([1]))

    def test_abstract(self):
        with self.assertRaises(NotImplementedError):
            ExtriStructure(self.structure.category)
        self.assertIs(backend_class('abelian'), AbelianStructure)
        with self.assertRaises(StructureError):
            backend_class('derived')

    def test_e_space(self):
        s = self.structure
        self.assertEqual(s.e_dim('S', 'S'), 1)
        for z in s.labels:
            self.assertEqual(s.e_dim('P', z), 0)
        self.assertEqual(s.e_dim(['S', 'S'], 'S'), 2)
        self.assertEqual(s.e_dim(['S', 'P'], ['S', 'S']), 2)
        dim, basis = s.e_space('S', 'S')
        self.assertEqual(dim, 1)
        self.assertEqual(basis.shape, (1, 1))

    def test_realize(self):
        t = self.triangle
        self.assertEqual(t.y, FormalObject(['P']))
        self.assertFalse(t.is_split())
        self.assertFalse(t.f.is_zero())
        split = self.structure.realize('S', 'S', F5.vector([0]))
        self.assertEqual(split.y, FormalObject(['S', 'S']))
        self.assertTrue(split.is_split())

    def test_long_exact(self):
        report = self.structure.verify_long_exact(self.triangle)
        self.assertTrue(report.passed, report.to_json())
        split = self.structure.realize('S', 'P', F5.zero_vector(0))
        self.assertTrue(self.structure.verify_long_exact(split).passed)

    def test_corrupted_extension(self):
        corrupted = self.triangle.with_delta(F5.vector([0]))
        report = self.structure.verify_long_exact(corrupted)
        self.assertFalse(report.passed)
        self.assertEqual(report.statuses()['(-,X)'], FAIL)

    def test_triangle_checks_shapes(self):
        t = self.triangle
        with self.assertRaises(RealizationError):
            ETriangle(self.structure, t.z, t.y, t.x, t.g, t.f, F5.vector([1, 0]))
        with self.assertRaises(RealizationError):
            ETriangle(self.structure, t.z, t.y, t.x, t.g, self.structure.category.identity('P'), t.delta)

    def test_pullback_along_scalar(self):
        s = self.structure
        h = s.category.identity('S').scaled(3)
        self.assertEqual(F5.to_list(s.pullback(self.triangle.delta, h, 'S')), [3])
        square = s.pullback_triangle(self.triangle, h)
        self.assertTrue(square.report.passed, square.report.to_json())
        self.assertEqual(F5.to_list(square.triangle.delta), [3])

    def test_pullback_along_zero(self):
        s = self.structure
        square = s.pullback_triangle(self.triangle, s.category.zero('S', 'S'))
        self.assertTrue(square.triangle.is_split())
        self.assertTrue(square.report.passed, square.report.to_json())

    def test_pushout_along_identity(self):
        s = self.structure
        square = s.pushout_triangle(self.triangle, s.category.identity('S'))
        self.assertEqual(F5.to_list(square.triangle.delta), [1])
        self.assertTrue(square.report.passed, square.report.to_json())

    def test_deflations(self):
        triangles, exhaustive = self.structure.deflations_onto('S', Caps(mult=1))
        self.assertTrue(exhaustive)
        middles = [t.y for t in triangles]
        self.assertIn(FormalObject(['P']), middles)
        self.assertIn(FormalObject(['S']), middles)
        for t in triangles:
            self.assertEqual(t.x, FormalObject(['S']))

    def test_complete(self):
        s = self.structure
        p = s.category.basis_morphism('P', 'S', 0)
        t = s.complete_deflation(p)
        self.assertEqual(t.z, FormalObject(['S']))
        self.assertFalse(t.is_split())
        self.assertTrue(s.verify_long_exact(t).passed)
        i = s.category.basis_morphism('S', 'P', 0)
        t = s.complete_inflation(i)
        self.assertEqual(t.x, FormalObject(['S']))
        self.assertIsNone(s.complete_inflation(p))
        self.assertIsNone(s.complete_deflation(i))

    def test_classify(self):
        flags = self.structure.classify_structure(Caps(mult=1))
        self.assertTrue(flags.inflations_mono)
        self.assertTrue(flags.deflations_epi)
        self.assertFalse(flags.all_morphisms_conflations)
        self.assertTrue(flags.exact)

    def test_verify_structure(self):
        report = self.structure.verify_structure(Caps(mult=1, samples=5))
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.statuses()['biadditivity'], PASS)

    def test_a2(self):
        s = AbelianStructure.from_algebra(a2(), 2)
        self.assertEqual(len(s.labels), 3)
        total = sum(s.label_e_dim(x, z) for x in s.labels for z in s.labels)
        self.assertEqual(total, 1)


class TestSubcategory(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.structure = projectives_of_a2()

    def test_split(self):
        s = self.structure
        self.assertEqual(len(s.labels), 2)
        for x in s.labels:
            for z in s.labels:
                self.assertEqual(s.e_dim(x, z), 0)
        flags = s.classify_structure(Caps(mult=1))
        self.assertTrue(flags.inflations_mono)
        self.assertTrue(flags.deflations_epi)
        self.assertFalse(flags.all_morphisms_conflations)
        self.assertTrue(s.verify_structure(Caps(mult=1, samples=3)).passed)

    def test_not_extension_closed(self):
        parent = self.structure.parent
        simples = [x for x in parent.labels if parent.modules.module(x).total_dim == 1]
        s = SubcategoryStructure(parent, simples)
        x, z = next((x, z) for x in simples for z in simples if s.label_e_dim(x, z))
        with self.assertRaises(NotExtensionClosed):
            s.realize(x, z, F5.vector([1]))
        report = s.verify_structure(Caps(mult=1))
        self.assertEqual(report.statuses()['middle_terms'], FAIL)


class TestTable(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.structure = point_table()

    def test_point(self):
        s = self.structure
        self.assertEqual(s.e_dim('X', 'X'), 1)
        t = s.realize('X', 'X', F5.vector([2]))
        self.assertTrue(t.y.is_zero)
        self.assertTrue(s.verify_long_exact(t).passed)
        self.assertEqual(s.realize('X', 'X', F5.vector([0])).y, FormalObject(['X', 'X']))
        self.assertTrue(s.verify_shift().passed)

    def test_missing_cone(self):
        with self.assertRaises(MissingConeData):
            TableStructure(point_category(F5), {'X': 'X'}, {})
        c = self.structure.category
        f = c.morphism(['X', 'X'], ['X'], [[[1], [1]]])
        with self.assertRaises(MissingConeData):
            self.structure.cone(f)

    def test_classify(self):
        flags = self.structure.classify_structure(Caps(mult=1))
        self.assertFalse(flags.deflations_epi)
        self.assertFalse(flags.inflations_mono)
        self.assertTrue(flags.all_morphisms_conflations)
