from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

import numpy as np
from hypothesis import given, settings, strategies as st

from linalg import PrimeField
from category import FormalObject
from category.tests.test_category import module_category_of_dual_numbers
from functors import (HomSpace, hom_module, kernel, image, cokernel, radical, composition_factors,
                      projective_presentation, ExtData, ext_dimension, is_projective, direct_sum,
                      yoneda, yoneda_map, simple, identity_map, zero_map, zero_module,
                      find_isomorphism, is_indecomposable)
from .test_module import dual_numbers, a2

F5 = PrimeField(5)


class TestHom(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.category = module_category_of_dual_numbers(F5)
        c = cls.category
        cls.modules = [simple(c, 'S'), simple(c, 'P'), yoneda(c, 'S'), yoneda(c, 'P'),
                       direct_sum(yoneda(c, 'S'), simple(c, 'P'))]

    def test_yoneda_lemma(self):
        c = self.category
        for x in c.labels:
            for module in self.modules:
                self.assertEqual(HomSpace(yoneda(c, x), module).dimension, module.dims[x])

    def test_small_homs(self):
        c = self.category
        self.assertEqual(len(hom_module(simple(c, 'S'), simple(c, 'S'))), 1)
        self.assertEqual(len(hom_module(simple(c, 'S'), simple(c, 'P'))), 0)
        self.assertEqual(len(hom_module(yoneda(c, 'P'), zero_module(c))), 0)
        for alpha in hom_module(yoneda(c, 'P'), yoneda(c, 'P')):
            self.assertTrue(alpha.is_natural())

    def test_coordinates(self):
        c = self.category
        hom = HomSpace(yoneda(c, 'P'), yoneda(c, 'P'))
        self.assertEqual(hom.dimension, 2)
        alpha = yoneda_map(c.basis_morphism('P', 'P', 1))
        self.assertTrue(hom.element(hom.coordinates(alpha)).equals(alpha))


class TestKernelCokernel(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.category = module_category_of_dual_numbers(F5)

    def test_cokernel_of_x(self):
        c = self.category
        alpha = yoneda_map(c.basis_morphism('P', 'P', 1))
        module, projection = cokernel(alpha)
        self.assertEqual(module.dim_vector, (1, 1))
        self.assertEqual(module.violations(), [])
        self.assertTrue(projection.is_natural())
        self.assertTrue((projection @ alpha).is_zero())
        k, inclusion = kernel(alpha)
        self.assertEqual(k.dim_vector, (1, 1))
        self.assertTrue((alpha @ inclusion).is_zero())

    def test_trivial_cases(self):
        c = self.category
        module = yoneda(c, 'P')
        self.assertTrue(kernel(identity_map(module))[0].is_zero())
        coker, _ = cokernel(zero_map(yoneda(c, 'S'), module))
        self.assertEqual(coker.dim_vector, module.dim_vector)

    @settings(derandomize=True, max_examples=15, deadline=None)
    @given(st.integers(0, 2**16), st.integers(0, 4), st.integers(0, 4))
    def test_rank_nullity(self, seed, i, j):
        c = self.category
        modules = [simple(c, 'S'), simple(c, 'P'), yoneda(c, 'S'), yoneda(c, 'P'),
                   yoneda(c, FormalObject(['S', 'P']))]
        hom = HomSpace(modules[i], modules[j])
        rng = np.random.default_rng(seed)
        alpha = hom.element(F5.random_vector(hom.dimension, rng))
        k, _ = kernel(alpha)
        im, _ = image(alpha)
        coker, _ = cokernel(alpha)
        for x in c.labels:
            self.assertEqual(k.dims[x] + im.dims[x], modules[i].dims[x])
            self.assertEqual(im.dims[x] + coker.dims[x], modules[j].dims[x])
        for module in (k, im, coker):
            self.assertEqual(module.violations(), [])


class TestRadical(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.category = module_category_of_dual_numbers(F5)

    def test_radical_of_representable(self):
        c = self.category
        rad, inclusion = radical(yoneda(c, 'P'))
        self.assertEqual(rad.dim_vector, (1, 1))
        self.assertTrue(inclusion.is_natural())
        self.assertTrue(radical(simple(c, 'S'))[0].is_zero())

    def test_composition_factors(self):
        c = self.category
        self.assertEqual(composition_factors(yoneda(c, 'P')), {'P': 2, 'S': 1})
        self.assertEqual(composition_factors(zero_module(c)), {})
        self.assertEqual(sum(composition_factors(yoneda(c, 'S')).values()), 2)

    def test_presentation(self):
        c = self.category
        presentation = projective_presentation(simple(c, 'P'))
        self.assertEqual(presentation.labels, FormalObject(['P']))
        self.assertEqual(presentation.syzygy.dim_vector, (1, 1))
        self.assertTrue(presentation.epi.is_surjective())
        self.assertIsNotNone(find_isomorphism(presentation.syzygy, yoneda(c, 'S')))


class TestExt(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.category = module_category_of_dual_numbers(F5)

    def test_dimensions(self):
        c = self.category
        s, p = simple(c, 'S'), simple(c, 'P')
        self.assertEqual(ext_dimension(s, s), 0)
        self.assertEqual(ext_dimension(s, p), 1)
        self.assertEqual(ext_dimension(p, s), 1)
        self.assertEqual(ext_dimension(p, p), 0)

    def test_projectives(self):
        c = self.category
        for x in c.labels:
            self.assertTrue(is_projective(yoneda(c, x)))
            self.assertFalse(is_projective(simple(c, x)))
            for module in (simple(c, 'S'), simple(c, 'P'), yoneda(c, 'S')):
                self.assertEqual(ext_dimension(yoneda(c, x), module), 0)

    def test_self_extension_of_dual_numbers(self):
        c = dual_numbers()
        s = simple(c, 'A')
        ext = ExtData(s, s)
        self.assertEqual(ext.dimension, 1)
        middle, a, b = ext.realize(F5.vector([1]))
        self.assertEqual(middle.total_dim, 2)
        self.assertEqual(middle.violations(), [])
        self.assertTrue(a.is_natural() and b.is_natural())
        self.assertTrue(a.is_injective() and b.is_surjective())
        self.assertTrue((b @ a).is_zero())
        self.assertTrue(is_indecomposable(middle))
        self.assertIsNotNone(find_isomorphism(middle, yoneda(c, 'A')))
        self.assertEqual(F5.to_list(ext.class_of_sequence(a, b)), [1])

    def test_split_extension(self):
        c = self.category
        s, p = simple(c, 'S'), simple(c, 'P')
        ext = ExtData(s, p)
        middle, a, b = ext.realize(F5.vector([0]))
        self.assertIsNotNone(find_isomorphism(middle, direct_sum(s, p)))
        middle, a, b = ext.realize(F5.vector([3]))
        self.assertIsNotNone(find_isomorphism(middle, yoneda(c, 'S')))
        self.assertEqual(F5.to_list(ext.class_of_sequence(a, b)), [3])

    def test_a2(self):
        c = a2()
        s1, s2 = simple(c, '1'), simple(c, '2')
        self.assertEqual(ext_dimension(s1, s2) + ext_dimension(s2, s1), 1)
        self.assertEqual(ext_dimension(s1, s1), 0)
