from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

import numpy as np
from hypothesis import given, settings, strategies as st

from linalg import PrimeField
from category import (FiniteLinearCategory, FiniteAlgebra, FormalObject, Quiver,
                      validate_category, ShapeMismatch, NonLocalEndomorphisms, FAIL)

F5 = PrimeField(5)
F101 = PrimeField(101)


def module_category_of_dual_numbers(field=F101) -> FiniteLinearCategory:
    """Hand-computed hom tables of mod k[x]/(x^2).

    Bases: Hom(S,S) = <1>, Hom(S,P) = <i>, Hom(P,S) = <p>,
    End(P) = <1, x> with i∘p = x and p∘i = 0.
    """
    hom_dims = {('S', 'S'): 1, ('S', 'P'): 1, ('P', 'S'): 1, ('P', 'P'): 2}
    composition = {
        ('S', 'S', 'S'): [[[1]]],
        ('S', 'S', 'P'): [[[1]]],
        ('S', 'P', 'S'): [[[0]]],
        ('S', 'P', 'P'): [[[1]], [[0]]],
        ('P', 'S', 'S'): [[[1]]],
        ('P', 'S', 'P'): [[[0, 1]]],
        ('P', 'P', 'S'): [[[1], [0]]],
        ('P', 'P', 'P'): [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
    }
    composition = {key: np.array(value) for key, value in composition.items()}
    return FiniteLinearCategory(field, ['S', 'P'], hom_dims, composition,
                                {'S': [1], 'P': [1, 0]})


def point_category(field=F101) -> FiniteLinearCategory:
    return FiniteLinearCategory(field, ['X'], {('X', 'X'): 1},
                                {('X', 'X', 'X'): np.array([[[1]]])}, {'X': [1]})


def corrupted_algebra(field=F101) -> FiniteAlgebra:
    """Basis 1, x, y with x·x = y, x·y = 0, y·x = x, y·y = 0."""
    structure = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        structure[0, i, i] = 1
        structure[i, 0, i] = 1
    structure[1, 1, 2] = 1
    structure[2, 1, 1] = 1
    return FiniteAlgebra(field, ['1', 'x', 'y'], structure, [1, 0, 0])


class TestFiniteLinearCategory(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.category = module_category_of_dual_numbers()

    def test_validate(self):
        report = validate_category(self.category)
        self.assertTrue(report.passed, report.to_json())
        self.assertTrue(validate_category(point_category()).passed)

    def test_compose(self):
        c = self.category
        inclusion = c.basis_morphism('S', 'P', 0)
        projection = c.basis_morphism('P', 'S', 0)
        x = c.basis_morphism('P', 'P', 1)
        self.assertTrue(c.compose(inclusion, projection).equals(x))
        self.assertTrue(c.compose(projection, inclusion).is_zero())
        self.assertTrue(c.compose(c.identity('P'), x).equals(x))
        self.assertTrue((c.zero('P', 'S') @ x).is_zero())
        with self.assertRaises(ShapeMismatch):
            c.compose(inclusion, inclusion)

    def test_in_radical(self):
        c = self.category
        self.assertFalse(c.in_radical(c.identity(FormalObject(['S', 'P']))))
        self.assertTrue(c.in_radical(c.basis_morphism('S', 'P', 0)))
        self.assertTrue(c.in_radical(c.basis_morphism('P', 'S', 0)))
        self.assertTrue(c.in_radical(c.basis_morphism('P', 'P', 1)))
        self.assertEqual(c.radical_basis('P', 'P').shape, (2, 1))

    def test_block_helpers(self):
        c = self.category
        a = FormalObject(['S', 'P'])
        identity = c.identity(a)
        composed = c.compose(c.inclusion(a, [0]), c.projection(a, [0]))
        rest = c.compose(c.inclusion(a, [1]), c.projection(a, [1]))
        self.assertTrue((composed + rest).equals(identity))
        f = c.from_flat(a, a, identity.flat())
        self.assertTrue(f.equals(identity))
        self.assertEqual(c.hom_space_dim(a, a), 5)
        self.assertIsNotNone(c.inverse(identity))
        self.assertIsNone(c.inverse(c.basis_morphism('P', 'P', 1)))

    def test_category_algebra(self):
        algebra = self.category.category_algebra()
        self.assertEqual(algebra.dimension, 5)
        idempotents = algebra.idempotents_of(self.category)
        self.assertEqual(len(idempotents), 2)
        # The idempotents give back the category.
        recovered = algebra.vertex_category(idempotents, ['S', 'P'])
        self.assertEqual(recovered.hom_dim('P', 'P'), 2)
        self.assertTrue(validate_category(recovered).passed)
        self.assertEqual(point_category().category_algebra().dimension, 1)

    def test_full_subcategory(self):
        sub = self.category.full_subcategory(['P'])
        self.assertEqual(sub.labels, ('P',))
        self.assertEqual(sub.hom_dim('P', 'P'), 2)

    @settings(derandomize=True, max_examples=20)
    @given(st.lists(st.sampled_from(['S', 'P']), min_size=0, max_size=2),
           st.lists(st.sampled_from(['S', 'P']), min_size=0, max_size=2),
           st.lists(st.sampled_from(['S', 'P']), min_size=0, max_size=2),
           st.lists(st.sampled_from(['S', 'P']), min_size=0, max_size=2),
           st.integers(0, 2**16))
    def test_associativity(self, a, b, c_, d, seed):
        c = module_category_of_dual_numbers(F5)
        rng = np.random.default_rng(seed)

        def random_morphism(source, target):
            n = c.hom_space_dim(source, target)
            return c.from_flat(source, target, F5.random_vector(n, rng))
        f, g, h = random_morphism(a, b), random_morphism(b, c_), random_morphism(c_, d)
        self.assertTrue((h @ (g @ f)).equals((h @ g) @ f))
        # The radical is an ideal.
        if c.in_radical(f) or c.in_radical(g):
            self.assertTrue(c.in_radical(g @ f))


class TestAlgebra(TestCase):

    def test_dual_numbers(self):
        structure = np.zeros((2, 2, 2), dtype=np.int64)
        structure[0, 0, 0] = structure[0, 1, 1] = structure[1, 0, 1] = 1
        algebra = FiniteAlgebra(F101, ['1', 'x'], structure, [1, 0])
        category = algebra.vertex_category(labels=['A'])
        self.assertEqual(category.hom_dim('A', 'A'), 2)
        self.assertTrue(validate_category(category).passed)

    def test_corrupted_composition(self):
        category = corrupted_algebra().vertex_category(labels=['A'])
        report = validate_category(category)
        self.assertFalse(report.passed)
        failure = report.failures()[0]
        self.assertEqual(failure.name, 'associativity')
        self.assertGreater(failure.witness['count'], 0)
        self.assertEqual(failure.witness['violations'][0]['objects'], ['A'] * 4)
        self.assertEqual(report.statuses()['associativity'], FAIL)

    def test_non_local(self):
        # k x k: two orthogonal idempotents in one object.
        structure = np.zeros((2, 2, 2), dtype=np.int64)
        structure[0, 0, 0] = structure[1, 1, 1] = 1
        category = FiniteAlgebra(F101, ['a', 'b'], structure, [1, 1]).vertex_category(labels=['A'])
        with self.assertRaises(NonLocalEndomorphisms):
            category.residue('A')
        self.assertFalse(validate_category(category).passed)


class TestQuiver(TestCase):

    def test_a2(self):
        category = Quiver(['1', '2'], [('a', '1', '2')]).vertex_category(F101)
        self.assertEqual(category.hom_dim('2', '1'), 1)
        self.assertEqual(category.hom_dim('1', '2'), 0)
        self.assertEqual(category.total_dimension(), 3)
        self.assertTrue(validate_category(category).passed)

    def test_cyclic_radical_square_zero(self):
        quiver = Quiver(['1', '2', '3'], [('a', '1', '2'), ('b', '2', '3'), ('c', '3', '1')], bound=1)
        category = quiver.vertex_category(F101)
        self.assertEqual(category.total_dimension(), 6)
        self.assertTrue(validate_category(category).passed)

    def test_relations(self):
        # Commutative square with the relation ab - cd.
        quiver = Quiver(['1', '2', '3', '4'],
                        [('a', '1', '2'), ('b', '2', '4'), ('c', '1', '3'), ('d', '3', '4')],
                        relations=[[(1, ['a', 'b']), (-1, ['c', 'd'])]])
        algebra, _ = quiver.path_algebra(F101)
        self.assertEqual(algebra.dimension, 4 + 4 + 1)
