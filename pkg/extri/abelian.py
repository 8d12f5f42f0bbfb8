"""The exact structure of a module category: E = Ext^1."""
from typing import Dict, List, Optional, Tuple

import logging

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism
from functors import (FpModule, ModuleMap, ModuleCategory, Presentation, ExtData, UnlistedModule,
                      block_map, direct_sum, yoneda, kernel, cokernel, projective_presentation,
                      lift_from_projective, lift_to_syzygies, factor_through_mono, realize_cocycle,
                      inclusions_and_projections, enumerate_indecomposables, name_module)
from .structure import ExtriStructure
from .triangle import ETriangle
from .exceptions import StructureError, RealizationError

logger = logging.getLogger(__name__)


def unique_names(modules: List[FpModule]) -> Dict[str, FpModule]:
    """Label modules by :py:func:`name_module`, numbering clashes."""
    names = [name_module(m) for m in modules]
    result = {}
    for name, module in zip(names, modules):
        label = name
        if names.count(name) > 1:
            label = '{}_{}'.format(name, sum(1 for other in result if other.startswith(name + '_')) + 1)
        module.name = label
        result[label] = module
    return result


class AbelianStructure(ExtriStructure):
    """mod of a finite linear category with all short exact sequences.

    Parameters
    ----------
    modules
        The indecomposable modules (up to the chosen bound) as a
        :py:class:`ModuleCategory`.
    """

    tag = 'abelian'

    def __init__(self, modules: ModuleCategory):
        super().__init__(modules)
        self.modules = modules
        self._presentations: Dict[str, Presentation] = {}
        self._ext: Dict[Tuple[str, str], ExtData] = {}

    @classmethod
    def from_algebra(cls, category: FiniteLinearCategory, max_dim: int,
                     rng: np.random.Generator = None) -> 'AbelianStructure':
        """Enumerate the indecomposables of dimension at most `max_dim`.

        Raises
        ------
        StructureError
            If the enumeration could not be made exhaustive.
        """
        modules, exhaustive = enumerate_indecomposables(category, max_dim, rng=rng)
        if not exhaustive:
            raise StructureError("indecomposables of {} up to dimension {} could not be enumerated exhaustively"
                                 .format(category, max_dim))
        logger.info("%d indecomposables up to dimension %d", len(modules), max_dim)
        return cls(ModuleCategory(unique_names(modules)))

    # ------------ Public interface ----------------

    def presentation(self, x: str) -> Presentation:
        if x not in self._presentations:
            self._presentations[x] = projective_presentation(self.modules.module(x))
        return self._presentations[x]

    def ext(self, x: str, z: str) -> ExtData:
        if (x, z) not in self._ext:
            self._ext[x, z] = ExtData(self.modules.module(x), self.modules.module(z), self.presentation(x))
        return self._ext[x, z]

    def sum_presentation(self, x: FormalObject) -> Presentation:
        """The direct sum of the chosen presentations of the summands."""
        c = self.modules.module(x[0]).category
        field = self.field
        parts = [self.presentation(a) for a in x]
        module = self.modules.sum_module(x)
        cover = yoneda(c, FormalObject(label for p in parts for label in p.labels))
        syzygy = direct_sum(*[p.syzygy for p in parts])
        diagonal = _diagonal([p.epi for p in parts])
        epi = block_map([p.cover for p in parts], [p.module for p in parts], diagonal,
                        source=cover, target=module)
        inclusion = block_map([p.syzygy for p in parts], [p.cover for p in parts],
                              _diagonal([p.inclusion for p in parts]), source=syzygy, target=cover)
        generators = []
        offsets = {w: 0 for w in c.labels}
        for a, p in zip(x, parts):
            for label, vector in p.generators:
                padded = field.zero_vector(module.dims[label])
                padded[offsets[label]:offsets[label] + len(vector)] = vector
                generators.append((label, padded))
            for w in c.labels:
                offsets[w] += self.modules.module(a).dims[w]
        return Presentation(module, tuple(generators), cover, epi, syzygy, inclusion)

    def cocycle(self, x: FormalObject, z: FormalObject, delta: np.ndarray,
                presentation: Presentation) -> ModuleMap:
        """The cocycle Ω(⊕X) -> ⊕Z with blocks the representatives of δ."""
        blocks = self.e_blocks(x, z, delta)
        sources = [self.presentation(a).syzygy for a in x]
        targets = [self.modules.module(b) for b in z]
        maps = [[self.ext(a, b).cocycle(blocks[i][j]) for j, a in enumerate(x)] for i, b in enumerate(z)]
        return block_map(sources, targets, maps, source=presentation.syzygy,
                         target=self.modules.sum_module(z))

    def class_of_sequence(self, x: FormalObject, z: FormalObject, a: ModuleMap, b: ModuleMap
                          ) -> np.ndarray:
        """Blockwise class of 0 -> ⊕Z -a-> M -b-> ⊕X -> 0."""
        if x.is_zero or z.is_zero:
            return self.field.zero_vector(0)
        p = self.sum_presentation(x)
        lifted = lift_from_projective(p.labels, p.cover, p.epi, b)
        eta = factor_through_mono(a, lifted @ p.inclusion)
        if eta is None:
            raise RealizationError("sequence ending in {} is not exact".format(x))
        _, syzygy_inclusions, _ = inclusions_and_projections([self.presentation(c).syzygy for c in x], p.syzygy)
        _, _, projections = inclusions_and_projections([self.modules.module(c) for c in z],
                                                       self.modules.sum_module(z))
        blocks = [[self.ext(c, d).coordinates(projections[i] @ eta @ syzygy_inclusions[j])
                   for j, c in enumerate(x)] for i, d in enumerate(z)]
        return self.e_from_blocks(blocks)

    def complete_deflation(self, f: BlockMorphism) -> Optional[ETriangle]:
        m = self.modules
        alpha = m.block_to_map(f)
        if not alpha.is_surjective():
            return None
        k, inclusion = kernel(alpha)
        try:
            z, _, sigma, _ = m.identify(k)
        except UnlistedModule:
            logger.debug("kernel of %s is not listed", f)
            return None
        a = inclusion @ sigma
        g = m.map_to_block(a, z, f.source)
        return ETriangle(self, z, f.source, f.target, g, f, self.class_of_sequence(f.target, z, a, alpha))

    def complete_inflation(self, g: BlockMorphism) -> Optional[ETriangle]:
        m = self.modules
        alpha = m.block_to_map(g)
        if not alpha.is_injective():
            return None
        module, projection = cokernel(alpha)
        try:
            x, rho, _, _ = m.identify(module)
        except UnlistedModule:
            logger.debug("cokernel of %s is not listed", g)
            return None
        b = rho @ projection
        f = m.map_to_block(b, g.target, x)
        return ETriangle(self, g.source, g.target, x, g, f, self.class_of_sequence(x, g.source, alpha, b))

    def info(self) -> dict:
        info = super().info()
        info['modules'] = {x: list(self.modules.module(x).dim_vector) for x in self.labels}
        return info

    # ------------------- hooks -------------------

    def _e_dim(self, x: str, z: str) -> int:
        return self.ext(x, z).dimension

    def _pullback_matrix(self, a: str, x: str, z: str, k: int) -> Mat:
        h = self.modules.representative(a, x, self.field.unit_vector(self.category.hom_dim(a, x), k))
        _, on_syzygy = lift_to_syzygies(self.presentation(a), self.presentation(x), h)
        source, target = self.ext(x, z), self.ext(a, z)
        columns = [target.coordinates(source.cocycle(self.field.unit_vector(source.dimension, l)) @ on_syzygy)
                   for l in range(source.dimension)]
        return self._columns(columns, target.dimension)

    def _pushforward_matrix(self, x: str, z: str, c: str, k: int) -> Mat:
        g = self.modules.representative(z, c, self.field.unit_vector(self.category.hom_dim(z, c), k))
        source, target = self.ext(x, z), self.ext(x, c)
        columns = [target.coordinates(g @ source.cocycle(self.field.unit_vector(source.dimension, l)))
                   for l in range(source.dimension)]
        return self._columns(columns, target.dimension)

    def _realize(self, x: FormalObject, z: FormalObject, delta: np.ndarray) -> ETriangle:
        m = self.modules
        presentation = self.sum_presentation(x)
        eta = self.cocycle(x, z, delta, presentation)
        middle, a, b = realize_cocycle(presentation, m.sum_module(z), eta)
        try:
            y, rho, sigma, _ = m.identify(middle)
        except UnlistedModule as error:
            raise RealizationError("middle term of {} -> ? -> {} is not listed: {}".format(z, x, error))
        g = m.map_to_block(rho @ a, z, y)
        f = m.map_to_block(b @ sigma, y, x)
        return ETriangle(self, z, y, x, g, f, delta)

    def _direct_e_dim(self, x: FormalObject, z: FormalObject) -> int:
        if x.is_zero or z.is_zero:
            return 0
        return ExtData(self.modules.sum_module(x), self.modules.sum_module(z)).dimension


def _diagonal(maps: List[ModuleMap]) -> List[List[Optional[ModuleMap]]]:
    return [[m if i == j else None for j in range(len(maps))] for i, m in enumerate(maps)]
