"""Hom spaces, kernels, cokernels, presentations and Ext^1 in mod C."""
from typing import Dict, List, Optional, Sequence, Tuple

import itertools
import logging

from dataclasses import dataclass

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism
from .module import (FpModule, ModuleMap, block_map, direct_sum,
                     inclusions_and_projections, yoneda, yoneda_element_map)
from .exceptions import ModuleError

logger = logging.getLogger(__name__)


class HomSpace:
    """The space of module maps F -> G with a fixed basis.

    The naturality conditions α_X F(f) = G(f) α_Y for all basis
    morphisms f: X -> Y form a linear system in the row-major entries of
    the components; its null space is Hom(F, G).
    """

    def __init__(self, source: FpModule, target: FpModule):
        self.source = source
        self.target = target
        field = source.field
        category = source.category
        offsets, n = {}, 0
        for x in category.labels:
            offsets[x] = n
            n += target.dims[x] * source.dims[x]
        self._length = n
        equations = []
        for x, y in itertools.product(category.labels, repeat=2):
            gx, fy = target.dims[x], source.dims[y]
            if not gx or not fy:
                continue
            for k in range(category.hom_dim(x, y)):
                rows = field.zeros(gx * fy, n)
                left = field.kron(field.eye(gx), source.basis_action(x, y, k).T)
                right = field.kron(target.basis_action(x, y, k), field.eye(fy))
                rows[:, offsets[x]:offsets[x] + left.shape[1]] = left
                block = rows[:, offsets[y]:offsets[y] + right.shape[1]]
                rows[:, offsets[y]:offsets[y] + right.shape[1]] = field.sub(block, right)
                equations.append(rows)
        system = field.vstack(equations, cols=n)
        self._basis = field.kernel_basis(system) if equations else field.eye(n)
        self._offsets = offsets

    @property
    def field(self):
        return self.source.field

    @property
    def dimension(self) -> int:
        return self._basis.shape[1]

    @property
    def matrix(self) -> Mat:
        """The basis as columns of flat coordinates."""
        return self._basis

    def element(self, coordinates: np.ndarray) -> ModuleMap:
        return self.from_flat(self.field.matmul(self._basis, self.field.asarray(coordinates)))

    def from_flat(self, flat: np.ndarray) -> ModuleMap:
        components = {}
        for x in self.source.category.labels:
            g, f = self.target.dims[x], self.source.dims[x]
            components[x] = flat[self._offsets[x]:self._offsets[x] + g * f].reshape(g, f)
        return ModuleMap(self.source, self.target, components)

    @property
    def basis(self) -> List[ModuleMap]:
        return [self.from_flat(self._basis[:, k]) for k in range(self.dimension)]

    def coordinates(self, alpha: ModuleMap) -> np.ndarray:
        return self.field.coordinates(self._basis, alpha.flat())

    def __len__(self) -> int:
        return self.dimension


def hom_module(source: FpModule, target: FpModule) -> List[ModuleMap]:
    """A basis of Hom(F, G)."""
    return HomSpace(source, target).basis


def kernel(alpha: ModuleMap) -> Tuple[FpModule, ModuleMap]:
    """The pointwise kernel with its inclusion."""
    field = alpha.field
    source = alpha.source
    category = source.category
    bases = {x: field.kernel_basis(alpha[x]) for x in category.labels}
    module = _submodule(source, bases, name='ker')
    return module, ModuleMap(module, source, bases)


def image(alpha: ModuleMap) -> Tuple[FpModule, ModuleMap]:
    """The pointwise image with its inclusion into the target."""
    field = alpha.field
    target = alpha.target
    bases = {x: field.column_space(alpha[x]) for x in target.category.labels}
    module = _submodule(target, bases, name='im')
    return module, ModuleMap(module, target, bases)


def image_factorization(alpha: ModuleMap) -> Tuple[FpModule, ModuleMap, ModuleMap]:
    """α = inclusion ∘ corestriction through the image."""
    module, inclusion = image(alpha)
    field = alpha.field
    corestriction = ModuleMap(alpha.source, module,
                              {x: field.solve_factorization(alpha[x], inclusion[x])
                               for x in module.category.labels})
    return module, corestriction, inclusion


@dataclass(frozen=True)
class Cokernel:
    module: FpModule
    projection: ModuleMap
    section: Dict[str, Mat]


def cokernel_data(alpha: ModuleMap) -> Cokernel:
    """The cokernel, its projection and a linear (not natural) section."""
    field = alpha.field
    target = alpha.target
    category = target.category
    sections, projections = {}, {}
    for x in category.labels:
        span = field.column_space(alpha[x])
        complement = field.complement_basis(span)
        change = field.inverse(field.hstack([complement, span], rows=target.dims[x]))
        sections[x] = complement
        projections[x] = change[:complement.shape[1]]
    dims = {x: sections[x].shape[1] for x in category.labels}
    actions = {}
    for x, y in itertools.product(category.labels, repeat=2):
        d = category.hom_dim(x, y)
        if not d or not dims[x] or not dims[y]:
            continue
        actions[x, y] = np.stack([field.matmul(projections[x],
                                               field.matmul(target.basis_action(x, y, k), sections[y]))
                                  for k in range(d)])
    module = FpModule(category, dims, actions, name='coker')
    return Cokernel(module, ModuleMap(target, module, projections), sections)


def cokernel(alpha: ModuleMap) -> Tuple[FpModule, ModuleMap]:
    data = cokernel_data(alpha)
    return data.module, data.projection


def induced_on_cokernel(data: Cokernel, other: Cokernel, beta: ModuleMap) -> ModuleMap:
    """The map coker -> coker' induced by β between the targets."""
    field = beta.field
    return ModuleMap(data.module, other.module,
                     {x: field.matmul(other.projection[x], field.matmul(beta[x], data.section[x]))
                      for x in beta.category.labels})


def lift_through(epi: ModuleMap, alpha: ModuleMap) -> Optional[ModuleMap]:
    """Pointwise solution β of epi∘β = α (None if some component fails).

    The result is natural whenever it is unique; callers needing a
    natural lift in general use :py:func:`lift_from_projective`.
    """
    field = alpha.field
    components = {}
    for x in alpha.category.labels:
        solution = field.solve_factorization(alpha[x], epi[x])
        if solution is None:
            return None
        components[x] = solution
    return ModuleMap(alpha.source, epi.source, components)


def factor_through_mono(mono: ModuleMap, alpha: ModuleMap) -> Optional[ModuleMap]:
    """The unique β with mono∘β = α, or None if α does not factor."""
    return lift_through(mono, alpha)


def radical(module: FpModule) -> Tuple[FpModule, ModuleMap]:
    """rad F: the submodule spanned by the images of radical morphisms."""
    field = module.field
    category = module.category
    bases = {}
    for x in category.labels:
        columns = []
        for y in category.labels:
            if not module.dims[y]:
                continue
            rad = category.radical_basis(x, y)
            for k in range(rad.shape[1]):
                columns.append(module.act(x, y, rad[:, k]))
        spanning = field.hstack(columns, rows=module.dims[x])
        bases[x] = field.column_space(spanning)
    sub = _submodule(module, bases, name='rad')
    return sub, ModuleMap(sub, module, bases)


def top_generators(module: FpModule) -> List[Tuple[str, np.ndarray]]:
    """Elements whose classes form a basis of the top F / rad F."""
    field = module.field
    _, inclusion = radical(module)
    generators = []
    for x in module.category.labels:
        complement = field.complement_basis(inclusion[x])
        generators.extend((x, complement[:, k]) for k in range(complement.shape[1]))
    return generators


def composition_factors(module: FpModule) -> Dict[str, int]:
    """Multiplicities of the simples S_X, by stripping tops layer by layer."""
    counts = {}
    current = module
    while not current.is_zero():
        for x, _ in top_generators(current):
            counts[x] = counts.get(x, 0) + 1
        current, _ = radical(current)
    return counts


@dataclass(frozen=True, eq=False)
class Presentation:
    """A minimal projective presentation Ω -> P0 -> F -> 0."""

    module: FpModule
    generators: Tuple[Tuple[str, np.ndarray], ...]
    cover: FpModule
    epi: ModuleMap
    syzygy: FpModule
    inclusion: ModuleMap

    @property
    def labels(self) -> FormalObject:
        return FormalObject(x for x, _ in self.generators)


def projective_presentation(module: FpModule) -> Presentation:
    """The projective cover from the top of F and its syzygy."""
    category = module.category
    generators = tuple(top_generators(module))
    labels = FormalObject(x for x, _ in generators)
    cover = yoneda(category, labels)
    epi = map_from_representable(cover, labels, module, [v for _, v in generators])
    syzygy, inclusion = kernel(epi)
    return Presentation(module, generators, cover, epi, syzygy, inclusion)


def relation_morphism(presentation: Presentation) -> BlockMorphism:
    """d: U1 -> U0 with Hom(-, U1) -> Hom(-, U0) -> F -> 0 exact.

    U1 is the projective cover of the syzygy; each of its generators is
    read off as a morphism into U0 through the inclusion into the cover.
    """
    category = presentation.module.category
    field = category.field
    labels = presentation.labels
    if presentation.syzygy.is_zero():
        return category.zero(FormalObject.zero(), labels)
    relations = projective_presentation(presentation.syzygy)
    d = presentation.inclusion @ relations.epi
    columns = []
    for i, a in enumerate(relations.labels):
        position = sum(category.hom_dim(a, y) for y in relations.labels[:i])
        identity = field.zero_vector(relations.cover.dims[a])
        identity[position:position + category.hom_dim(a, a)] = category.identity_vector(a)
        columns.append(category.from_flat(a, labels, field.matmul(d[a], identity)))
    return category.row(columns)


def map_from_representable(cover: FpModule, labels: FormalObject, target: FpModule,
                           elements: Sequence[np.ndarray]) -> ModuleMap:
    """The map ⊕ Hom(-, X_i) -> G sending id_{X_i} to the i-th element."""
    category = target.category
    field = category.field
    if not len(labels):
        return ModuleMap(cover, target)
    parts = [yoneda_element_map(target, x, element) for x, element in zip(labels, elements)]
    components = {}
    for w in category.labels:
        components[w] = field.hstack([p[w] for p in parts], rows=target.dims[w])
    return ModuleMap(cover, target, components)


def lift_from_projective(labels: FormalObject, cover: FpModule, alpha: ModuleMap,
                         epi: ModuleMap) -> ModuleMap:
    """Lift α: ⊕ Hom(-, X_i) -> G through an epimorphism E -> G.

    By Yoneda only the images of the identities need lifting.

    Raises
    ------
    ModuleError
        If `epi` is not surjective where needed.
    """
    field = alpha.field
    elements, offsets = [], {}
    category = alpha.category
    for i, x in enumerate(labels):
        position = sum(category.hom_dim(x, y) for y in labels[:i])
        identity = field.zero_vector(cover.dims[x])
        identity[position:position + category.hom_dim(x, x)] = category.identity_vector(x)
        image_element = field.matmul(alpha[x], identity)
        lifted = field.solve(epi[x], image_element)
        if lifted is None:
            raise ModuleError("cannot lift through a non-surjective map at {}".format(x))
        elements.append(lifted)
    return map_from_representable(cover, labels, epi.source, elements)


def lift_to_syzygies(source: Presentation, target: Presentation, alpha: ModuleMap
                     ) -> Tuple[ModuleMap, ModuleMap]:
    """Lift α: F -> F' to the covers and the syzygies of two presentations."""
    on_cover = lift_from_projective(source.labels, source.cover, alpha @ source.epi, target.epi)
    restricted = on_cover @ source.inclusion
    on_syzygy = factor_through_mono(target.inclusion, restricted)
    if on_syzygy is None:
        raise ModuleError("lift does not restrict to syzygies")
    return on_cover, on_syzygy


class ExtData:
    """Ext^1(F, G) computed from a minimal projective presentation of F.

    Classes are represented by cocycles Ω -> G modulo the restrictions of
    maps P0 -> G. The representatives are a fixed subset of the basis of
    Hom(Ω, G), so coordinates are reproducible.
    """

    def __init__(self, source: FpModule, target: FpModule, presentation: Presentation = None):
        self.source = source
        self.target = target
        field = source.field
        category = source.category
        self.presentation = presentation or projective_presentation(source)
        p = self.presentation
        self.cocycles = HomSpace(p.syzygy, target)
        # Coboundaries: restrictions of maps P0 -> G, spanned by Yoneda generators.
        restrictions = []
        for i, x in enumerate(p.labels):
            for k in range(target.dims[x]):
                elements = [field.zero_vector(target.dims[y]) for y in p.labels]
                elements[i] = field.unit_vector(target.dims[x], k)
                phi = map_from_representable(p.cover, p.labels, target, elements)
                restrictions.append(self.cocycles.coordinates(phi @ p.inclusion))
        n = self.cocycles.dimension
        boundary = (np.stack(restrictions, axis=1).astype(field.dtype) if restrictions
                    else field.zeros(n, 0))
        self._boundary = field.column_space(boundary)
        self._representatives = field.complement_basis(self._boundary)
        self._reducer = field.hstack([self._representatives, self._boundary], rows=n)
        logger.debug("Ext^1(%s, %s) has dimension %d", source, target, self.dimension)

    @property
    def field(self):
        return self.source.field

    @property
    def dimension(self) -> int:
        return self._representatives.shape[1]

    def cocycle(self, vector: np.ndarray) -> ModuleMap:
        """The representative cocycle Ω -> G of a class."""
        return self.cocycles.element(self.field.matmul(self._representatives, self.field.asarray(vector)))

    def coordinates(self, eta: ModuleMap) -> np.ndarray:
        """The class of a cocycle Ω -> G."""
        c = self.cocycles.coordinates(eta)
        return self.field.coordinates(self._reducer, c)[:self.dimension]

    def is_coboundary(self, eta: ModuleMap) -> bool:
        return self.field.is_zero(self.coordinates(eta))

    def realize(self, vector: np.ndarray) -> Tuple[FpModule, ModuleMap, ModuleMap]:
        """The extension 0 -> G -> E -> F -> 0 with the given class.

        E is the pushout of Ω -> P0 along the cocycle, i.e. the cokernel
        of Ω -> P0 ⊕ G, w |-> (ι w, -η w).
        """
        return realize_cocycle(self.presentation, self.target, self.cocycle(vector))

    def class_of_sequence(self, a: ModuleMap, b: ModuleMap) -> np.ndarray:
        """The class of a short exact sequence 0 -> G -a-> E -b-> F -> 0."""
        p = self.presentation
        lifted = lift_from_projective(p.labels, p.cover, p.epi, b)
        eta = factor_through_mono(a, lifted @ p.inclusion)
        if eta is None:
            raise ModuleError("sequence is not exact in the middle")
        return self.coordinates(eta)


def realize_cocycle(presentation: Presentation, target: FpModule, eta: ModuleMap
                    ) -> Tuple[FpModule, ModuleMap, ModuleMap]:
    p = presentation
    field = target.field
    middle = direct_sum(p.cover, target)
    relation = block_map([p.syzygy], [p.cover, target], [[p.inclusion], [-eta]], target=middle)
    data = cokernel_data(relation)
    _, inclusions, _ = inclusions_and_projections([p.cover, target], middle)
    a = data.projection @ inclusions[1]
    down = block_map([p.cover, target], [p.module], [[p.epi, None]], source=middle)
    b = ModuleMap(data.module, p.module,
                  {x: field.matmul(down[x], data.section[x]) for x in target.category.labels})
    return data.module, a, b


def ext_dimension(source: FpModule, target: FpModule) -> int:
    return ExtData(source, target).dimension


def is_projective(module: FpModule) -> bool:
    """F is projective iff its projective cover is an isomorphism."""
    return projective_presentation(module).syzygy.is_zero()


def _submodule(module: FpModule, bases: Dict[str, Mat], name: str = None) -> FpModule:
    """The submodule whose value at X is spanned by the columns of bases[X]."""
    field = module.field
    category = module.category
    dims = {x: bases[x].shape[1] for x in category.labels}
    actions = {}
    for x, y in itertools.product(category.labels, repeat=2):
        d = category.hom_dim(x, y)
        if not d or not dims[x] or not dims[y]:
            continue
        stack = []
        for k in range(d):
            moved = field.matmul(module.basis_action(x, y, k), bases[y])
            solution = field.solve_factorization(moved, bases[x])
            if solution is None:
                raise ModuleError("subspace is not a submodule at {} -> {}".format(x, y))
            stack.append(solution)
        actions[x, y] = np.stack(stack)
    return FpModule(category, dims, actions, name=name)
