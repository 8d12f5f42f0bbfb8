"""Morphisms factoring through add W and the stable hom spaces Hom(A, B)/[W]."""
from typing import Dict, Iterable, List, Sequence, Tuple

import itertools
import logging

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism

logger = logging.getLogger(__name__)


def ideal_vectors(category: FiniteLinearCategory, x: str, y: str, through: Iterable[str]) -> Mat:
    """A basis (as columns) of the maps X -> Y factoring through add W.

    Maps through a sum of copies of W are sums of maps through single
    copies, so composites through the indecomposables of W span.
    """
    field = category.field
    columns = []
    for w in through:
        for k, l in itertools.product(range(category.hom_dim(x, w)), range(category.hom_dim(w, y))):
            columns.append(category.compose_vectors(x, w, y, field.unit_vector(category.hom_dim(w, y), l),
                                                    field.unit_vector(category.hom_dim(x, w), k)))
    return field.column_space(_columns(field, columns, category.hom_dim(x, y)))


def ideal_matrix(category: FiniteLinearCategory, a, b, through: Sequence[str]) -> Mat:
    """Columns spanning [W](A, B) in the flat coordinates of Hom(A, B)."""
    field = category.field
    a, b = category.object(a), category.object(b)
    total = category.hom_space_dim(a, b)
    columns, offset = [], 0
    for y in b:
        for x in a:
            d = category.hom_dim(x, y)
            block = ideal_vectors(category, x, y, through)
            for k in range(block.shape[1]):
                column = field.zero_vector(total)
                column[offset:offset + d] = block[:, k]
                columns.append(column)
            offset += d
    return _columns(field, columns, total)


def in_ideal(f: BlockMorphism, through: Sequence[str]) -> bool:
    """Does f factor through an object of add W?"""
    return f.field.in_span(ideal_matrix(f.category, f.source, f.target, through), f.flat())


class StableHom:
    """Hom(A, B)/[W] with representatives chosen among the basis morphisms.

    Parameters
    ----------
    category
        The ambient category.
    source, target
        Formal sums A and B.
    through
        Labels of the indecomposables of W.
    """

    def __init__(self, category: FiniteLinearCategory, source, target, through: Sequence[str]):
        self.category = category
        self.source = category.object(source)
        self.target = category.object(target)
        self.through = tuple(through)
        field = category.field
        self.ideal = field.column_space(ideal_matrix(category, self.source, self.target, self.through))
        total = category.hom_space_dim(self.source, self.target)
        self.representatives = field.complement_basis(self.ideal) if total else field.zeros(0, 0)
        self._system = field.hstack([self.representatives, self.ideal], rows=total)

    # ------------ Public interface ----------------

    @property
    def field(self):
        return self.category.field

    @property
    def dimension(self) -> int:
        return self.representatives.shape[1]

    @property
    def full_dimension(self) -> int:
        return self.representatives.shape[0]

    @property
    def basis(self) -> List[BlockMorphism]:
        return [self.lift(self.field.unit_vector(self.dimension, k)) for k in range(self.dimension)]

    def reduce(self, f) -> np.ndarray:
        """Coordinates of the class of f (a morphism or its flat vector)."""
        flat = f.flat() if isinstance(f, BlockMorphism) else f
        return self.field.coordinates(self._system, flat)[:self.dimension]

    def lift(self, coordinates: np.ndarray) -> BlockMorphism:
        flat = self.field.matmul(self.representatives, coordinates)
        return self.category.from_flat(self.source, self.target, flat)

    def is_zero_class(self, f) -> bool:
        """Is f in the ideal?"""
        return self.field.is_zero(self.reduce(f))

    def to_json(self) -> dict:
        return {'source': self.source.to_json(), 'target': self.target.to_json(),
                'dimension': self.dimension, 'ideal': self.ideal.shape[1]}


def stable_category(category: FiniteLinearCategory, labels: Sequence[str], through: Sequence[str]
                    ) -> Tuple[FiniteLinearCategory, Dict[Tuple[str, str], StableHom]]:
    """The full subcategory on `labels` of the ideal quotient by [W].

    Returns the quotient as a finite linear category (composition
    reduced modulo the ideal) and the stable hom spaces it was built from.
    """
    field = category.field
    labels = list(labels)
    spaces = {(x, y): StableHom(category, FormalObject((x,)), FormalObject((y,)), through)
              for x, y in itertools.product(labels, repeat=2)}
    hom_dims = {pair: space.dimension for pair, space in spaces.items()}
    composition = {}
    for x, y, z in itertools.product(labels, repeat=3):
        first, second, result = spaces[x, y], spaces[y, z], spaces[x, z]
        if not (first.dimension and second.dimension):
            continue
        tensor = np.zeros((second.dimension, first.dimension, result.dimension), dtype=field.dtype)
        for k, g in enumerate(second.basis):
            for l, f in enumerate(first.basis):
                tensor[k, l, :] = result.reduce(g @ f)
        composition[x, y, z] = tensor
    identities = {x: spaces[x, x].reduce(category.identity(x)) for x in labels}
    quotient = FiniteLinearCategory(field, labels, hom_dims, composition, identities)
    logger.debug("stable hom dimensions modulo %s: %s", list(through),
                 {'{}->{}'.format(*pair): d for pair, d in hom_dims.items() if d})
    return quotient, spaces


def _columns(field, columns: List[np.ndarray], rows: int) -> Mat:
    if not columns:
        return field.zeros(rows, 0)
    return np.stack(columns, axis=1).astype(field.dtype)


def is_stable_isomorphism(f: BlockMorphism, through: Sequence[str]) -> bool:
    """Is f: A -> B invertible modulo [W]?

    Solves f∘g = id_B + ω and g∘f = id_A + ω' for g: B -> A and ω, ω'
    in the ideal.
    """
    c = f.category
    field = c.field
    a, b = f.source, f.target
    unknowns = c.hom_space_dim(b, a)
    on_b, on_a = c.hom_space_dim(b, b), c.hom_space_dim(a, a)
    ideal_b, ideal_a = ideal_matrix(c, b, b, through), ideal_matrix(c, a, a, through)
    top = field.hstack([c.postcompose_matrix(f, b), ideal_b, field.zeros(on_b, ideal_a.shape[1])], rows=on_b)
    bottom = field.hstack([c.precompose_matrix(f, a), field.zeros(on_a, ideal_b.shape[1]), ideal_a], rows=on_a)
    system = field.vstack([top, bottom], cols=unknowns + ideal_b.shape[1] + ideal_a.shape[1])
    target = np.concatenate([c.identity(b).flat(), c.identity(a).flat()]).astype(field.dtype)
    return field.solve(system, target) is not None
