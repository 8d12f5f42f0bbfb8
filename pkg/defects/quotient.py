"""The quotient mod C -> mod C / def C = mod eAe and its adjoints.

With Σ the objects of def C and e the sum of the identities of the
other objects, the quotient is restriction to the full subcategory on
those objects, whose category algebra is eAe. E_C(X) is the restricted
representable functor.
"""
from typing import Dict, List, Sequence, Tuple

import itertools
import logging

from dataclasses import dataclass

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism, Report
from functors import (FpModule, ModuleMap, HomSpace, Cokernel, yoneda, yoneda_map,
                      yoneda_element_map, zero_module, kernel, cokernel_data,
                      projective_presentation, relation_morphism, map_from_representable, ExtData)
from extri import ExtriStructure, Caps
from .defect import DeflationIndex, defect
from .serre import def_simples
from .lex import perp_test
from .exceptions import SerreError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SerreData:
    """Σ, the complementary idempotent e of the category algebra and eAe."""

    sigma: Tuple[str, ...]
    kept: Tuple[str, ...]
    idempotent: np.ndarray
    algebra_dimension: int
    quotient_dimension: int

    def to_json(self) -> dict:
        return {
            'sigma': list(self.sigma),
            'kept': list(self.kept),
            'algebra_dimension': self.algebra_dimension,
            'quotient_dimension': self.quotient_dimension,
        }


class QuotientPresentation:
    """Q: mod C -> mod eAe by restriction, with both adjoints.

    Parameters
    ----------
    category
        The category C.
    sigma
        Labels of the simples generating def C.

    Raises
    ------
    SerreError
        If Σ names an object outside C.
    """

    def __init__(self, category: FiniteLinearCategory, sigma: Sequence[str]):
        unknown = [x for x in sigma if x not in category]
        if unknown:
            raise SerreError("Σ names objects {} outside {}".format(unknown, list(category.labels)))
        self.category = category
        self.sigma = tuple(x for x in category.labels if x in set(sigma))
        self.kept = tuple(x for x in category.labels if x not in set(sigma))
        self.subcategory = category.full_subcategory(self.kept)
        self._representables: Dict[str, FpModule] = {}

    # ------------ Public interface ----------------

    @property
    def field(self):
        return self.category.field

    @property
    def is_zero(self) -> bool:
        """The quotient is the zero category when Σ holds every object."""
        return not self.kept

    def serre_data(self) -> SerreData:
        algebra = self.category.category_algebra()
        idempotents = algebra.idempotents_of(self.category)
        e = self.field.zero_vector(algebra.dimension)
        for x, ex in zip(self.category.labels, idempotents):
            if x in self.kept:
                e = self.field.add(e, ex)
        return SerreData(self.sigma, self.kept, e, algebra.dimension, self.subcategory.total_dimension())

    def quotient(self, module: FpModule) -> FpModule:
        return module.restrict(self.kept, self.subcategory)

    def quotient_map(self, alpha: ModuleMap, source: FpModule = None,
                     target: FpModule = None) -> ModuleMap:
        source = source or self.quotient(alpha.source)
        target = target or self.quotient(alpha.target)
        return ModuleMap(source, target, {w: alpha[w] for w in self.kept})

    def e_functor(self, x) -> FpModule:
        """E_C(X) = Q(-, X)."""
        x = self.category.object(x)
        if len(x) != 1:
            module = self.quotient(yoneda(self.category, x))
            module.name = 'E({})'.format(x)
            return module
        label = x[0]
        if label not in self._representables:
            module = self.quotient(yoneda(self.category, x))
            module.name = 'E({})'.format(label)
            self._representables[label] = module
        return self._representables[label]

    def e_functor_map(self, f: BlockMorphism) -> ModuleMap:
        return self.quotient_map(yoneda_map(f), self.e_functor(f.source), self.e_functor(f.target))

    def right_adjoint(self, module: FpModule) -> FpModule:
        """R(N)(X) = Hom(E_C(X), N)."""
        return self._right_adjoint(module)[0]

    def right_adjoint_map(self, beta: ModuleMap) -> ModuleMap:
        """R(β) by postcomposition."""
        source, spaces = self._right_adjoint(beta.source)
        target, targets = self._right_adjoint(beta.target)
        components = {}
        for x in self.category.labels:
            columns = [targets[x].coordinates(beta @ alpha) for alpha in spaces[x].basis]
            components[x] = self._columns(columns, target.dims[x])
        return ModuleMap(source, target, components)

    def unit(self, module: FpModule) -> ModuleMap:
        """η_F: F -> RQF, v in F(X) |-> the restriction of Hom(-, X) -> F."""
        field = self.field
        quotient = self.quotient(module)
        target, spaces = self._right_adjoint(quotient)
        components = {}
        for x in self.category.labels:
            columns = []
            for k in range(module.dims[x]):
                element = yoneda_element_map(module, x, field.unit_vector(module.dims[x], k))
                columns.append(spaces[x].coordinates(self.quotient_map(element, self.e_functor(x), quotient)))
            components[x] = self._columns(columns, target.dims[x])
        return ModuleMap(module, target, components)

    def counit(self, module: FpModule) -> ModuleMap:
        """ε_N: QRN -> N, α |-> α_w(id_w)."""
        field = self.field
        right, spaces = self._right_adjoint(module)
        source = self.quotient(right)
        components = {}
        for w in self.kept:
            identity = self.category.identity_vector(w)
            columns = [field.matmul(alpha[w], identity) for alpha in spaces[w].basis]
            components[w] = self._columns(columns, module.dims[w])
        return ModuleMap(source, module, components)

    def left_adjoint(self, module: FpModule) -> FpModule:
        """L(N): the cokernel of the lifted presentation of N."""
        return self._left_adjoint(module)[2].module

    def left_counit(self, module: FpModule) -> ModuleMap:
        """LQF -> F, induced by the generators of QF."""
        field = self.field
        quotient = self.quotient(module)
        labels, generators, data = self._left_adjoint(quotient)
        cover = yoneda(self.category, labels)
        phi = map_from_representable(cover, labels, module, [v for _, v in generators])
        return ModuleMap(data.module, module,
                         {x: field.matmul(phi[x], data.section[x]) for x in self.category.labels})

    def torsion_part(self, module: FpModule) -> Tuple[FpModule, ModuleMap]:
        """The largest submodule of F in def C, as the kernel of the unit."""
        sub, inclusion = kernel(self.unit(module))
        sub.name = 'tors({})'.format(module.name or 'F')
        return sub, inclusion

    def cotorsion_part(self, module: FpModule) -> Tuple[FpModule, ModuleMap]:
        """The largest quotient of F in def C, the cokernel of LQF -> F."""
        data = cokernel_data(self.left_counit(module))
        data.module.name = 'top({})'.format(module.name or 'F')
        return data.module, data.projection

    def restriction_is_bijective(self, source: FpModule, target: FpModule) -> bool:
        """Does Q induce Hom(M, N) = Hom(QM, QN)?"""
        field = self.field
        hom = HomSpace(source, target)
        qs, qt = self.quotient(source), self.quotient(target)
        restricted = HomSpace(qs, qt)
        if hom.dimension != restricted.dimension:
            return False
        columns = [restricted.coordinates(self.quotient_map(alpha, qs, qt)) for alpha in hom.basis]
        return field.rank(self._columns(columns, restricted.dimension)) == hom.dimension

    def preserves(self, a: ModuleMap, b: ModuleMap) -> bool:
        """Is 0 -> QA -> QB -> QC -> 0 exact for a short exact 0 -> A -> B -> C -> 0?"""
        field = self.field
        for w in self.kept:
            rank_a, rank_b = field.rank(a[w]), field.rank(b[w])
            if rank_a != a.source.dims[w] or rank_b != b.target.dims[w]:
                return False
            if rank_a + rank_b != a.target.dims[w] or not field.is_zero(field.matmul(b[w], a[w])):
                return False
        return True

    def check_perp_full_faithful(self, modules: Sequence[FpModule], caps: Caps) -> Report:
        """Hom(X, Y) = Hom(QX, QY) for sampled X and Y in (def C)^⊥."""
        report = Report('perp_full_faithful')
        perp = [m for m in modules if perp_test(m, self.sigma)]
        pairs = list(itertools.islice(itertools.product(modules, perp), caps.perp_samples))
        bad = [{'source': m, 'target': n} for m, n in pairs if not self.restriction_is_bijective(m, n)]
        report.check('bijective', not bad, {'pairs': bad[:5]}, exhaustive=False,
                     detail='{} pairs'.format(len(pairs)))
        return report

    def verify(self, structure: ExtriStructure, caps: Caps, modules: Sequence[FpModule]) -> Report:
        """Diagnostics of the quotient: the idempotent, exactness of Q, Q
        killing defects, and the perpendicular category."""
        field = self.field
        report = Report('quotient')
        data = self.serre_data()
        report.data['serre'] = data.to_json()
        algebra = self.category.category_algebra()
        e = data.idempotent
        corner = [algebra.multiply(algebra.multiply(e, algebra.basis_vector(name)), e) for name in algebra.names]
        rank = field.rank(self._columns(corner, algebra.dimension)) if corner else 0
        report.check('idempotent', field.equal(algebra.multiply(e, e), e) and rank == data.quotient_dimension,
                     {'corner_rank': rank, 'quotient_dimension': data.quotient_dimension})
        bad = []
        for m, n in itertools.islice(itertools.product(modules, repeat=2), caps.perp_samples):
            ext = ExtData(m, n)
            for k in range(ext.dimension):
                _, a, b = ext.realize(field.unit_vector(ext.dimension, k))
                if not self.preserves(a, b):
                    bad.append({'sub': n, 'quotient': m, 'class': k})
        report.check('exact', not bad, {'extensions': bad[:5]}, exhaustive=False)
        triangles, exhaustive = DeflationIndex(structure, caps).conflations()
        bad = [t for t in triangles if not self.quotient(defect(t)).is_zero()]
        report.check('kills_defects', not bad, {'triangles': bad[:5]}, exhaustive=exhaustive)
        report.extend(self.check_perp_full_faithful(modules, caps))
        return report

    def info(self) -> dict:
        return {'sigma': list(self.sigma), 'kept': list(self.kept),
                'quotient_dimension': self.subcategory.total_dimension()}

    # ------------------- private helpers -------------------

    def _right_adjoint(self, module: FpModule) -> Tuple[FpModule, Dict[str, HomSpace]]:
        c = self.category
        spaces = {x: HomSpace(self.e_functor(x), module) for x in c.labels}
        dims = {x: spaces[x].dimension for x in c.labels}
        actions = {}
        for x, y in itertools.product(c.labels, repeat=2):
            d = c.hom_dim(x, y)
            if not d or not dims[x] or not dims[y]:
                continue
            stack = []
            for f in c.hom_basis(x, y):
                ef = self.e_functor_map(f)
                columns = [spaces[x].coordinates(alpha @ ef) for alpha in spaces[y].basis]
                stack.append(self._columns(columns, dims[x]))
            actions[x, y] = np.stack(stack)
        return FpModule(c, dims, actions, name='R({})'.format(module.name or 'N')), spaces

    def _left_adjoint(self, module: FpModule) -> Tuple[FormalObject, list, Cokernel]:
        """Generators of N and the cokernel of (-, d) for its lifted presentation d."""
        c = self.category
        top = projective_presentation(module)
        labels = top.labels
        cover = yoneda(c, labels)
        d = relation_morphism(top)
        if d.source.is_zero:
            data = cokernel_data(ModuleMap(zero_module(c), cover))
        else:
            data = cokernel_data(yoneda_map(c.adopt(d), target=cover))
        data.module.name = 'L({})'.format(module.name or 'N')
        return labels, list(top.generators), data

    def _columns(self, columns: List[np.ndarray], rows: int) -> Mat:
        if not columns:
            return self.field.zeros(rows, 0)
        return np.stack(columns, axis=1).astype(self.field.dtype)


def serre_quotient(structure: ExtriStructure, sigma: Sequence[str] = None) -> QuotientPresentation:
    """The quotient by def C; Σ defaults to :py:func:`def_simples`."""
    if sigma is None:
        sigma = def_simples(structure)
    quotient = QuotientPresentation(structure.category, sigma)
    logger.info("quotient by Σ=%s keeps %s (eAe of dimension %d)", list(quotient.sigma),
                list(quotient.kept), quotient.subcategory.total_dimension())
    return quotient
