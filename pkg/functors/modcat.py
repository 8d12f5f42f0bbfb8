"""A finite list of modules viewed as a finite linear category.

Objects are labelled indecomposable modules, morphisms are module maps,
optionally taken modulo an ideal (e.g. the maps factoring through
projectives). Formal sums of labels are identified with direct sums of
modules, so results of module computations can be read back as objects.
"""
from typing import Callable, Dict, List, Mapping, Tuple

import itertools
import logging

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism
from .module import (FpModule, ModuleMap, block_map, direct_sum, identity_map,
                     inclusions_and_projections, zero_module)
from .homological import HomSpace, is_projective, top_generators
from .decompose import decompose, isomorphism
from .exceptions import ModuleError, UnlistedModule

logger = logging.getLogger(__name__)

#: ideal(X, Y, hom) -> columns (in the coordinates of hom) spanning I(X, Y)
Ideal = Callable[[str, str, HomSpace], Mat]


class ModuleCategory(FiniteLinearCategory):
    """The full subcategory of modules on a list of indecomposables.

    Parameters
    ----------
    modules
        Label -> indecomposable module, pairwise non-isomorphic.
    ideal
        Optional two-sided ideal of maps to divide out. Objects whose
        identity lies in the ideal are not allowed.
    """

    def __init__(self, modules: Mapping[str, FpModule], ideal: Ideal = None):
        if not modules:
            raise ModuleError("a module category needs at least one object")
        self.modules = dict(modules)
        labels = list(self.modules)
        field = next(iter(self.modules.values())).field
        self._homs: Dict[Tuple[str, str], HomSpace] = {}
        self._representatives: Dict[Tuple[str, str], Mat] = {}
        self._reducers: Dict[Tuple[str, str], Mat] = {}
        hom_dims = {}
        for x, y in itertools.product(labels, repeat=2):
            hom = HomSpace(self.modules[x], self.modules[y])
            n = hom.dimension
            if ideal is None:
                killed = field.zeros(n, 0)
            else:
                killed = field.column_space(ideal(x, y, hom))
            representatives = field.complement_basis(killed)
            self._homs[x, y] = hom
            self._representatives[x, y] = representatives
            self._reducers[x, y] = field.hstack([representatives, killed], rows=n)
            hom_dims[x, y] = representatives.shape[1]
        composition = {}
        for x, y, z in itertools.product(labels, repeat=3):
            dxy, dyz, dxz = hom_dims[x, y], hom_dims[y, z], hom_dims[x, z]
            if not dxy or not dyz or not dxz:
                continue
            tensor = np.zeros((dyz, dxy, dxz), dtype=field.dtype)
            fs = [self.representative(x, y, field.unit_vector(dxy, l)) for l in range(dxy)]
            for k in range(dyz):
                g = self.representative(y, z, field.unit_vector(dyz, k))
                for l, f in enumerate(fs):
                    tensor[k, l, :] = self.reduce(x, z, g @ f)
            composition[x, y, z] = tensor
        identities = {}
        for x in labels:
            identities[x] = self.reduce(x, x, identity_map(self.modules[x]))
        self._sums: Dict[FormalObject, FpModule] = {}
        super().__init__(field, labels, hom_dims, composition, identities)
        logger.debug("module category on %s", labels)

    # ------------ Public interface ----------------

    def module(self, x: str) -> FpModule:
        return self.modules[x]

    def hom_space(self, x: str, y: str) -> HomSpace:
        return self._homs[x, y]

    def reduce(self, x: str, y: str, alpha: ModuleMap) -> np.ndarray:
        """Coordinates of the class of α: M_X -> M_Y."""
        hom = self._homs[x, y]
        field = hom.field
        coordinates = hom.coordinates(alpha)
        full = field.coordinates(self._reducers[x, y], coordinates)
        return full[:self._representatives[x, y].shape[1]]

    def representative(self, x: str, y: str, vector: np.ndarray) -> ModuleMap:
        """A module map representing the morphism with the given coordinates."""
        hom = self._homs[x, y]
        return hom.element(hom.field.matmul(self._representatives[x, y], hom.field.asarray(vector)))

    def sum_module(self, a) -> FpModule:
        """The direct sum of the modules of the summands of A."""
        a = self.object(a)
        if a not in self._sums:
            parts = [self.modules[x] for x in a]
            module = direct_sum(*parts) if parts else zero_module(next(iter(self.modules.values())).category)
            module.name = repr(a)
            self._sums[a] = module
        return self._sums[a]

    def block_to_map(self, f: BlockMorphism) -> ModuleMap:
        """The module map between direct sums represented by f."""
        sources = [self.modules[x] for x in f.source]
        targets = [self.modules[y] for y in f.target]
        blocks = [[self.representative(x, y, f.blocks[i][j]) for j, x in enumerate(f.source)]
                  for i, y in enumerate(f.target)]
        return block_map(sources, targets, blocks, source=self.sum_module(f.source),
                         target=self.sum_module(f.target))

    def map_to_block(self, alpha: ModuleMap, a, b) -> BlockMorphism:
        """The morphism A -> B of a module map between the direct sums."""
        a, b = self.object(a), self.object(b)
        _, inclusions, _ = inclusions_and_projections([self.modules[x] for x in a], self.sum_module(a))
        _, _, projections = inclusions_and_projections([self.modules[y] for y in b], self.sum_module(b))
        blocks = [[self.reduce(x, y, projections[i] @ alpha @ inclusions[j]) for j, x in enumerate(a)]
                  for i, y in enumerate(b)]
        return self.morphism(a, b, blocks)

    def identify(self, module: FpModule, drop: Callable[[FpModule], bool] = None
                 ) -> Tuple[FormalObject, ModuleMap, ModuleMap, List[FpModule]]:
        """Write a module as a formal sum of listed objects.

        Returns
        -------
        The formal sum A (summands in label order), maps ρ: M -> ⊕A and
        σ: ⊕A -> M with ρσ = id, and the summands that were dropped.
        Without dropped summands σ and ρ are inverse isomorphisms.

        Raises
        ------
        UnlistedModule
            If a summand is not isomorphic to a listed object and `drop`
            does not accept it.
        """
        matched: List[Tuple[str, ModuleMap, object]] = []
        dropped = []
        for summand in decompose(module):
            for x in self.labels:
                alpha = isomorphism(self.modules[x], summand.module)
                if alpha is not None:
                    matched.append((x, alpha, summand))
                    break
            else:
                if drop is not None and drop(summand.module):
                    dropped.append(summand.module)
                    continue
                raise UnlistedModule("summand {} of {} is not among {}".format(
                    summand.module, module, list(self.labels)))
        matched.sort(key=lambda item: self.index(item[0]))
        a = FormalObject(x for x, _, _ in matched)
        total, inclusions, projections = inclusions_and_projections([self.modules[x] for x in a],
                                                                    self.sum_module(a))
        rho, sigma = ModuleMap(module, total), ModuleMap(total, module)
        for k, (x, alpha, summand) in enumerate(matched):
            sigma = sigma + summand.inclusion @ alpha @ projections[k]
            rho = rho + inclusions[k] @ alpha.inverse() @ summand.projection
        return a, rho, sigma, dropped

    def identify_object(self, module: FpModule) -> FormalObject:
        return self.identify(module)[0]


def name_module(module: FpModule) -> str:
    """A readable label: S<X> for simples, P<X> for indecomposable projectives
    with top S_X, M<dimension vector> otherwise."""
    support = module.support()
    if module.total_dim == 1:
        return "S{}".format(support[0])
    if is_projective(module):
        tops = top_generators(module)
        if len(tops) == 1:
            return "P{}".format(tops[0][0])
    dims = module.dim_vector
    separator = "." if max(dims) > 9 else ""
    return "M" + separator.join(str(d) for d in dims)
