from .conf import FIXTURES_DIRECTORY
from unittest import TestCase

from functors import simple, yoneda
from extri.tests.test_structure import dual_number_structure
from extri.tests.test_stable import stable_cyclic_nakayama
from defects import def_simples, serre_quotient
from heart import (CotorsionPair, CotorsionError, perpendicular_v, enumerate_cotorsion_pairs,
                   lex_approximation, check_restricted_representables)
from .test_cotorsion import CAPS, fix_u


class TestTriangleApproximation(TestCase):

    @classmethod
    def setUpClass(cls):
        cls.structure = stable_cyclic_nakayama()
        cls.pair = fix_u(cls.structure)
        below = cls.structure.unshift_label('S1')
        u = ('S1', below)
        cls.wide = CotorsionPair(cls.structure, u, perpendicular_v(cls.structure, u))

    def test_restricted_representables(self):
        report = check_restricted_representables(self.pair)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.data['sigma'], [])
        for pair in enumerate_cotorsion_pairs(self.structure, CAPS):
            report = check_restricted_representables(pair)
            self.assertTrue(report.passed, (pair, report.to_json()))

    def test_projective_is_left_exact(self):
        domain = self.pair.u_structure()
        module = yoneda(domain.category, 'S1')
        approximation = lex_approximation(module, domain, CAPS, self.pair)
        self.assertEqual(approximation.method, 'triangle')
        self.assertTrue(approximation.s.is_zero())
        self.assertTrue(approximation.psi.is_isomorphism())
        report = approximation.check(def_simples(domain))
        self.assertTrue(report.passed, report.to_json())

    def test_defect_is_its_own_torsion(self):
        self.assertEqual(self.wide.v, ('S1',))
        domain = self.wide.u_structure()
        sigma = def_simples(domain)
        self.assertEqual(sigma, ('S1',))
        module = simple(domain.category, 'S1')
        approximation = lex_approximation(module, domain, CAPS, self.wide)
        self.assertTrue(approximation.g.is_zero())
        self.assertEqual(approximation.s.dims, module.dims)
        report = approximation.check(sigma)
        self.assertTrue(report.passed, report.to_json())

    def test_module_outside_u(self):
        module = yoneda(self.structure.category, 'S1')
        with self.assertRaises(CotorsionError):
            lex_approximation(module, self.structure, CAPS, self.pair)


class TestUnitApproximation(TestCase):
    """Without a cotorsion pair F -> RQF splits off the defect part."""

    @classmethod
    def setUpClass(cls):
        cls.structure = dual_number_structure()
        cls.sigma = serre_quotient(cls.structure).sigma

    def test_defect(self):
        module = simple(self.structure.category, 'S')
        approximation = lex_approximation(module, self.structure, CAPS)
        self.assertEqual(approximation.method, 'unit')
        self.assertTrue(approximation.g.is_zero())
        self.assertEqual(approximation.s.total_dim, 1)
        self.assertTrue(approximation.check(self.sigma).passed)

    def test_representable(self):
        module = yoneda(self.structure.category, 'S')
        approximation = lex_approximation(module, self.structure, CAPS)
        self.assertTrue(approximation.s.is_zero())
        report = approximation.check(self.sigma)
        self.assertTrue(report.passed, report.to_json())
