"""The stable module category of a self-injective algebra.

Objects are the non-projective indecomposable modules; morphisms are
module maps modulo those factoring through a projective. The shift is
the cosyzygy: the cokernel of a monomorphism into a projective (which is
injective), read back modulo projective summands.
"""
from typing import Dict, Mapping, Tuple

import logging

from dataclasses import dataclass

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism
from functors import (FpModule, ModuleMap, ModuleCategory, HomSpace, Cokernel, UnlistedModule,
                      block_map, yoneda, cokernel_data, induced_on_cokernel, inclusions_and_projections,
                      enumerate_indecomposables, is_projective)
from .abelian import unique_names
from .triangulated import TriangulatedStructure, Cone
from .exceptions import StructureError, RealizationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Envelope:
    """A monomorphism M -> I into a projective-injective module.

    ``labels`` lists the indecomposable projectives of I, one per basis
    element of some Hom(M, P_v), so every map from M to a projective
    factors through it.
    """

    labels: FormalObject
    module: FpModule
    map: ModuleMap


def envelope(module: FpModule) -> Envelope:
    """The map M -> ⊕ P_v stacking bases of all Hom(M, P_v)."""
    category = module.category
    labels, parts = [], []
    for v in category.labels:
        target = yoneda(category, v)
        for alpha in HomSpace(module, target).basis:
            labels.append(v)
            parts.append(alpha)
    labels = FormalObject(labels)
    total = yoneda(category, labels)
    if not parts:
        return Envelope(labels, total, ModuleMap(module, total))
    alpha = block_map([module], [p.target for p in parts], [[p] for p in parts], source=module, target=total)
    return Envelope(labels, total, alpha)


def through_projectives(x: str, y: str, hom: HomSpace, envelopes: Mapping[str, Envelope]) -> Mat:
    """Columns spanning the maps M_X -> M_Y that factor through a projective."""
    field = hom.field
    env = envelopes[x]
    columns = [hom.coordinates(beta @ env.map) for beta in HomSpace(env.module, hom.target).basis]
    if not columns:
        return field.zeros(hom.dimension, 0)
    return np.stack(columns, axis=1).astype(field.dtype)


class StableStructure(TriangulatedStructure):
    """The stable category of mod A for a self-injective A.

    Parameters
    ----------
    algebra
        The projectives of A as a finite linear category.
    modules
        Non-projective indecomposable modules, closed under cosyzygy.

    Raises
    ------
    StructureError
        If a module is projective, a module does not embed into a
        projective, or the cosyzygy of a listed module is not listed.
    """

    tag = 'stable'

    def __init__(self, algebra: FiniteLinearCategory, modules: Mapping[str, FpModule]):
        self.algebra = algebra
        modules = dict(modules)
        self._envelopes: Dict[str, Envelope] = {}
        for x, module in modules.items():
            if is_projective(module):
                raise StructureError("{} is projective and vanishes in the stable category".format(x))
            env = envelope(module)
            if not env.map.is_injective():
                raise StructureError("{} does not embed into a projective; the algebra is not self-injective"
                                     .format(x))
            self._envelopes[x] = env
        self.modules = ModuleCategory(
            modules, ideal=lambda x, y, hom: through_projectives(x, y, hom, self._envelopes))
        super().__init__(self.modules)
        self._cosyzygies: Dict[str, Tuple[str, Cokernel, ModuleMap, ModuleMap]] = {}
        for x in self.labels:
            data = cokernel_data(self._envelopes[x].map)
            try:
                obj, rho, sigma, _ = self.modules.identify(data.module, drop=is_projective)
            except UnlistedModule as error:
                raise StructureError("cosyzygy of {} is not listed: {}".format(x, error))
            if len(obj) != 1:
                raise StructureError("cosyzygy of {} is {}, not indecomposable".format(x, obj))
            self._cosyzygies[x] = (obj[0], data, rho, sigma)
        logger.info("stable category on %s with shift %s", list(self.labels),
                    {x: self._cosyzygies[x][0] for x in self.labels})

    @classmethod
    def from_algebra(cls, algebra: FiniteLinearCategory, max_dim: int,
                     rng: np.random.Generator = None) -> 'StableStructure':
        modules, exhaustive = enumerate_indecomposables(algebra, max_dim, rng=rng)
        if not exhaustive:
            raise StructureError("indecomposables of {} up to dimension {} could not be enumerated exhaustively"
                                 .format(algebra, max_dim))
        return cls(algebra, unique_names([m for m in modules if not is_projective(m)]))

    # ------------ Public interface ----------------

    def envelope(self, x: str) -> Envelope:
        return self._envelopes[x]

    def info(self) -> dict:
        info = super().info()
        info['modules'] = {x: list(self.modules.module(x).dim_vector) for x in self.labels}
        return info

    # ------------------- hooks -------------------

    def _shift_label(self, x: str) -> str:
        return self._cosyzygies[x][0]

    def _shift_matrix(self, x: str, y: str) -> Mat:
        field = self.field
        m = self.modules
        x1, data_x, _, sigma_x = self._cosyzygies[x]
        y1, data_y, rho_y, _ = self._cosyzygies[y]
        columns = []
        for k in range(m.hom_dim(x, y)):
            f = m.representative(x, y, field.unit_vector(m.hom_dim(x, y), k))
            extension = self._extend(x, y, f)
            shifted = rho_y @ induced_on_cokernel(data_x, data_y, extension) @ sigma_x
            columns.append(m.reduce(x1, y1, shifted))
        return self._columns(columns, m.hom_dim(x1, y1))

    def _cone(self, f: BlockMorphism) -> Cone:
        """Pushout of the envelope of X along f, modulo projective summands."""
        m = self.modules
        field = self.field
        sources = [m.module(x) for x in f.source]
        envelopes = [self._envelopes[x] for x in f.source]
        phi = m.block_to_map(f)
        mx, my = m.sum_module(f.source), m.sum_module(f.target)
        if f.source.is_zero:
            injective = yoneda(self.algebra, FormalObject.zero())
            iota = ModuleMap(mx, injective)
        else:
            injective = yoneda(self.algebra, FormalObject(v for e in envelopes for v in e.labels))
            iota = block_map(sources, [e.module for e in envelopes],
                             [[e.map if i == j else None for j in range(len(sources))]
                              for i, e in enumerate(envelopes)], source=mx, target=injective)
        middle, inclusions, _ = inclusions_and_projections([injective, my])
        relation = inclusions[0] @ iota - inclusions[1] @ phi
        data = cokernel_data(relation)
        try:
            c, rho, sigma, _ = m.identify(data.module, drop=is_projective)
        except UnlistedModule as error:
            raise RealizationError("cone of {} is not listed: {}".format(f, error))
        u = m.map_to_block(rho @ data.projection @ inclusions[1], f.target, c)
        shifted = self.shift_object(f.source)
        down = self._to_cosyzygies(f.source, injective)
        collapse = block_map([injective, my], [m.sum_module(shifted)], [[down, None]], source=middle)
        to_shift = ModuleMap(data.module, m.sum_module(shifted),
                             {w: field.matmul(collapse[w], data.section[w]) for w in self.algebra.labels})
        w = m.map_to_block(to_shift @ sigma, c, shifted)
        return c, u, w

    # ------------------- private helpers -------------------

    def _extend(self, x: str, y: str, f: ModuleMap) -> ModuleMap:
        """A map F: I_X -> I_Y with F∘ι_X = ι_Y∘f."""
        field = self.field
        ex, ey = self._envelopes[x], self._envelopes[y]
        hom = HomSpace(ex.module, ey.module)
        basis = hom.basis
        target = (ey.map @ f).flat()
        if not basis:
            if not field.is_zero(target):
                raise StructureError("cannot extend a map {} -> {} to the envelopes".format(x, y))
            return ModuleMap(ex.module, ey.module)
        system = np.stack([(beta @ ex.map).flat() for beta in basis], axis=1).astype(field.dtype)
        solution = field.solve(system, target)
        if solution is None:
            raise StructureError("cannot extend a map {} -> {} to the envelopes".format(x, y))
        return hom.element(solution)

    def _to_cosyzygies(self, a: FormalObject, injective: FpModule) -> ModuleMap:
        """⊕ I_{a_j} -> ⊕ M_{a_j[1]}, blockwise ρ∘q."""
        m = self.modules
        if a.is_zero:
            return ModuleMap(injective, m.sum_module(a))
        envelopes = [self._envelopes[x] for x in a]
        blocks, targets = [], []
        for i, x in enumerate(a):
            _, data, rho, _ = self._cosyzygies[x]
            targets.append(m.module(self._shift_label(x)))
            blocks.append([rho @ data.projection if i == j else None for j in range(len(a))])
        return block_map([e.module for e in envelopes], targets, blocks,
                         source=injective, target=m.sum_module(self.shift_object(a)))
