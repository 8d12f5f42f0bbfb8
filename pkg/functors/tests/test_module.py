from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

import numpy as np
from hypothesis import given, settings, strategies as st

from linalg import PrimeField
from category import FiniteAlgebra, FormalObject, Quiver, validate_category
from category.tests.test_category import module_category_of_dual_numbers
from functors import (FpModule, ModuleMap, ModuleError, direct_sum, yoneda, yoneda_map, simple,
                      identity_map, inclusions_and_projections, decompose, is_indecomposable,
                      find_isomorphism, multiplicities, enumerate_indecomposables,
                      ModuleCategory, name_module, UnlistedModule)

F5 = PrimeField(5)


def dual_numbers(field=F5):
    """k[x]/(x^2) as a category with one object A."""
    structure = np.zeros((2, 2, 2), dtype=np.int64)
    structure[0, 0, 0] = structure[0, 1, 1] = structure[1, 0, 1] = 1
    return FiniteAlgebra(field, ['1', 'x'], structure, [1, 0]).vertex_category(labels=['A'])


def a2(field=F5):
    return Quiver(['1', '2'], [('a', '1', '2')]).vertex_category(field)


class TestFpModule(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.category = module_category_of_dual_numbers(F5)

    def test_yoneda_dimensions(self):
        c = self.category
        self.assertEqual(yoneda(c, 'P').dim_vector, (1, 2))
        self.assertEqual(yoneda(c, 'S').dim_vector, (1, 1))
        self.assertTrue(yoneda(c, FormalObject()).is_zero())
        self.assertEqual(yoneda(c, FormalObject(['S', 'P'])).dim_vector, (2, 3))
        for label in c.labels:
            self.assertEqual(yoneda(c, label).violations(), [])

    def test_simples(self):
        c = self.category
        self.assertEqual(simple(c, 'P').dim_vector, (0, 1))
        self.assertEqual(simple(c, 'S').dim_vector, (1, 0))
        self.assertEqual(simple(c, 'P').violations(), [])

    def test_broken_functor(self):
        c = dual_numbers()
        # x acting invertibly violates x∘x = 0
        broken = FpModule(c, {'A': 1}, {('A', 'A'): [[[1]], [[1]]]})
        self.assertTrue(broken.violations())
        with self.assertRaises(ModuleError):
            broken.check()

    def test_yoneda_map_naturality(self):
        c = self.category
        x = c.basis_morphism('P', 'P', 1)
        alpha = yoneda_map(x)
        self.assertTrue(alpha.is_natural())
        self.assertEqual(alpha.rank(), 1)
        self.assertTrue(yoneda_map(c.identity('P')).equals(identity_map(yoneda(c, 'P'))))

    def test_direct_sum_maps(self):
        c = self.category
        parts = [yoneda(c, 'S'), simple(c, 'S')]
        total, inclusions, projections = inclusions_and_projections(parts)
        self.assertEqual(total.dim_vector, (2, 1))
        recomposed = inclusions[0] @ projections[0] + inclusions[1] @ projections[1]
        self.assertTrue(recomposed.equals(identity_map(total)))
        self.assertTrue((projections[1] @ inclusions[0]).is_zero())
        with self.assertRaises(ModuleError):
            ModuleMap(parts[0], parts[1], {'S': F5.eye(2)})

    def test_restrict(self):
        restricted = yoneda(self.category, 'P').restrict(['P'])
        self.assertEqual(restricted.dim_vector, (2,))
        self.assertEqual(restricted.violations(), [])


class TestDecompose(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.category = module_category_of_dual_numbers(F5)

    def test_indecomposables(self):
        c = self.category
        for module in (simple(c, 'S'), simple(c, 'P'), yoneda(c, 'S'), yoneda(c, 'P')):
            self.assertTrue(is_indecomposable(module), module)
            self.assertEqual(len(decompose(module)), 1)
        self.assertEqual(decompose(yoneda(c, FormalObject())), [])

    def test_yoneda_plus_simple(self):
        c = self.category
        module = direct_sum(yoneda(c, 'S'), simple(c, 'S'))
        summands = decompose(module)
        self.assertEqual(len(summands), 2)
        self.assertEqual(sorted(s.module.total_dim for s in summands), [1, 2])
        total = summands[0].inclusion @ summands[0].projection + summands[1].inclusion @ summands[1].projection
        self.assertTrue(total.equals(identity_map(module)))

    def test_two_copies(self):
        c = self.category
        module = yoneda(c, FormalObject(['P', 'P']))
        counts = multiplicities(module)
        self.assertEqual(len(counts), 1)
        self.assertEqual(counts[0][1], 2)
        self.assertEqual(counts[0][0].dim_vector, (1, 2))

    def test_find_isomorphism(self):
        c = self.category
        left = yoneda(c, FormalObject(['S', 'P']))
        right = direct_sum(yoneda(c, 'P'), yoneda(c, 'S'))
        alpha = find_isomorphism(left, right)
        self.assertIsNotNone(alpha)
        self.assertTrue(alpha.is_isomorphism())
        self.assertTrue(alpha.is_natural())
        self.assertIsNone(find_isomorphism(yoneda(c, 'S'), direct_sum(simple(c, 'S'), simple(c, 'P'))))

    @settings(derandomize=True, max_examples=10, deadline=None)
    @given(st.integers(0, 2**16))
    def test_random_change_of_basis(self, seed):
        # Conjugating a sum of indecomposables by an automorphism of the
        # underlying spaces keeps the number of summands.
        c = self.category
        module = direct_sum(yoneda(c, 'S'), simple(c, 'S'), simple(c, 'P'))
        rng = np.random.default_rng(seed)
        changes = {}
        for x in c.labels:
            d = module.dims[x]
            m = F5.random_matrix(d, d, rng)
            while not F5.is_invertible(m):
                m = F5.random_matrix(d, d, rng)
            changes[x] = m
        actions = {}
        for x in c.labels:
            for y in c.labels:
                if not c.hom_dim(x, y):
                    continue
                actions[x, y] = np.stack([F5.matmul(F5.inverse(changes[x]),
                                                    F5.matmul(module.basis_action(x, y, k), changes[y]))
                                          for k in range(c.hom_dim(x, y))])
        conjugated = FpModule(c, module.dims, actions)
        self.assertEqual(conjugated.violations(), [])
        self.assertEqual(len(decompose(conjugated)), 3)
        self.assertIsNotNone(find_isomorphism(module, conjugated))


class TestEnumerate(TestCase):

    def test_dual_numbers(self):
        modules, exhaustive = enumerate_indecomposables(dual_numbers(), 3)
        self.assertTrue(exhaustive)
        self.assertEqual(sorted(m.total_dim for m in modules), [1, 2])

    def test_a2(self):
        modules, exhaustive = enumerate_indecomposables(a2(), 3)
        self.assertTrue(exhaustive)
        self.assertEqual(sorted(m.dim_vector for m in modules), [(0, 1), (1, 0), (1, 1)])

    def test_auslander_algebra(self):
        # mod of mod k[x]/(x^2): two simples, two modules of length 2 and Hom(-, P).
        modules, exhaustive = enumerate_indecomposables(module_category_of_dual_numbers(F5), 3)
        self.assertTrue(exhaustive)
        self.assertEqual(sorted(m.dim_vector for m in modules),
                         [(0, 1), (1, 0), (1, 1), (1, 1), (1, 2)])
        for module in modules:
            self.assertTrue(is_indecomposable(module))

    def test_sampled_over_large_field(self):
        modules, exhaustive = enumerate_indecomposables(a2(PrimeField(101)), 2, limit=0, samples=3)
        self.assertFalse(exhaustive)
        self.assertEqual(len(modules), 3)


class TestModuleCategory(TestCase):

    @classmethod
    def setUpClass(cls):
        c = dual_numbers()
        cls.category = ModuleCategory({'S': simple(c, 'A'), 'P': yoneda(c, 'A')})

    def test_recovers_hom_tables(self):
        m = self.category
        self.assertEqual(m.hom_dim('S', 'S'), 1)
        self.assertEqual(m.hom_dim('S', 'P'), 1)
        self.assertEqual(m.hom_dim('P', 'S'), 1)
        self.assertEqual(m.hom_dim('P', 'P'), 2)
        self.assertTrue(validate_category(m).passed)

    def test_identify(self):
        m = self.category
        c = m.module('S').category
        module = direct_sum(yoneda(c, 'A'), simple(c, 'A'), simple(c, 'A'))
        obj, rho, sigma, dropped = m.identify(module)
        self.assertEqual(obj, FormalObject(['S', 'S', 'P']))
        self.assertEqual(dropped, [])
        self.assertTrue((rho @ sigma).equals(identity_map(m.sum_module(obj))))
        self.assertTrue((sigma @ rho).equals(identity_map(module)))

    def test_identify_unlisted(self):
        c = dual_numbers()
        only_simple = ModuleCategory({'S': simple(c, 'A')})
        module = direct_sum(yoneda(c, 'A'), simple(c, 'A'))
        with self.assertRaises(UnlistedModule):
            only_simple.identify(module)
        obj, rho, sigma, dropped = only_simple.identify(module, drop=lambda n: n.total_dim == 2)
        self.assertEqual(obj, FormalObject(['S']))
        self.assertEqual(len(dropped), 1)
        self.assertTrue((rho @ sigma).equals(identity_map(only_simple.sum_module(obj))))

    def test_block_maps(self):
        m = self.category
        f = m.basis_morphism('S', 'P', 0)
        alpha = m.block_to_map(f)
        self.assertTrue(alpha.is_natural())
        self.assertTrue(m.map_to_block(alpha, 'S', 'P').equals(f))
        g = m.compose(m.basis_morphism('P', 'S', 0), f)
        self.assertTrue(g.is_zero())

    def test_names(self):
        c = dual_numbers()
        self.assertEqual(name_module(simple(c, 'A')), 'SA')
        self.assertEqual(name_module(yoneda(c, 'A')), 'PA')
        self.assertEqual(name_module(direct_sum(simple(c, 'A'), simple(c, 'A'))), 'M2')
