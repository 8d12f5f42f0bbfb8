"""Triangulated categories given by explicit tables.

The user lists the shift on indecomposables, optionally its matrices on
hom spaces, and one distinguished triangle per basis morphism between
indecomposables. Cones of zero maps and of scalar multiples of basis
morphisms (plus identities on the remaining summands) follow from
additivity; other morphisms are rejected.
"""
from typing import Dict, List, Mapping, Optional, Tuple

import itertools
import logging

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism
from .triangulated import TriangulatedStructure, Cone
from .exceptions import StructureError, MissingConeData

logger = logging.getLogger(__name__)


class TableStructure(TriangulatedStructure):
    """A triangulated structure from a shift table and a cone oracle.

    Parameters
    ----------
    category
        The underlying finite linear category.
    shift
        Label -> label of X[1].
    cones
        ``(X, Y, k)`` -> (C, u, w) for the k-th basis morphism X -> Y.
    shift_matrices
        ``(X, Y)`` -> matrix of Hom(X, Y) -> Hom(X[1], Y[1]); identity
        when missing.

    Raises
    ------
    MissingConeData
        If a basis morphism has no cone.
    StructureError
        If the shift or a cone does not fit the category.
    """

    tag = 'table'

    def __init__(self, category: FiniteLinearCategory, shift: Mapping[str, str],
                 cones: Mapping[Tuple[str, str, int], Cone],
                 shift_matrices: Mapping[Tuple[str, str], Mat] = None):
        super().__init__(category)
        self._shift = dict(shift)
        for x in category.labels:
            if x not in self._shift:
                raise StructureError("no shift given for {}".format(x))
            category.object(self._shift[x])
        self._matrices = {key: category.field.asarray(np.asarray(value))
                          for key, value in (shift_matrices or {}).items()}
        self._cones: Dict[Tuple[str, str, int], Cone] = {}
        for x, y in itertools.product(category.labels, repeat=2):
            for k in range(category.hom_dim(x, y)):
                if (x, y, k) not in cones:
                    raise MissingConeData("no cone for basis morphism {} of {} -> {}".format(k, x, y))
                self._cones[x, y, k] = self._checked_cone(category.basis_morphism(x, y, k), cones[x, y, k])

    # ------------------- hooks -------------------

    def _shift_label(self, x: str) -> str:
        return self._shift[x]

    def _shift_matrix(self, x: str, y: str) -> Mat:
        d = self.category.hom_dim(x, y)
        matrix = self._matrices.get((x, y))
        if matrix is None:
            if d != self.category.hom_dim(self._shift[x], self._shift[y]):
                raise StructureError("shift changes dim Hom({}, {}); give its matrix".format(x, y))
            return self.field.eye(d)
        return matrix

    def _cone(self, f: BlockMorphism) -> Cone:
        if f.is_zero():
            return self._split_cone(f)
        support = [(i, j) for i in range(len(f.target)) for j in range(len(f.source))
                   if not self.field.is_zero(f.blocks[i][j])]
        if len(support) == 1:
            i, j = support[0]
            nonzero = np.flatnonzero(f.blocks[i][j])
            if len(nonzero) == 1:
                return self._monomial_cone(f, i, j, int(nonzero[0]))
        raise MissingConeData("no cone for {}: only multiples of basis morphisms are tabulated".format(f))

    # ------------------- private helpers -------------------

    def _checked_cone(self, f: BlockMorphism, cone: Cone) -> Cone:
        c, u, w = cone
        c = self.category.object(c)
        u, w = self.category.adopt(u), self.category.adopt(w)
        if u.source != f.target or u.target != c or w.source != c or w.target != self.shift_object(f.source):
            raise StructureError("cone of {} has the wrong shape".format(f))
        if not (u @ f).is_zero() or not (w @ u).is_zero() or not (self.shift(f) @ w).is_zero():
            raise StructureError("cone of {} does not compose to zero".format(f))
        return c, u, w

    def _split_cone(self, f: BlockMorphism) -> Cone:
        """X -0-> Y -> Y + X[1] -> X[1]."""
        c = self.category
        shifted = self.shift_object(f.source)
        cone = f.target + shifted
        u = c.inclusion(cone, list(range(len(f.target))))
        w = c.projection(cone, list(range(len(f.target), len(cone))))
        return cone, u, w

    def _monomial_cone(self, f: BlockMorphism, i: int, j: int, k: int) -> Cone:
        """Cone of c·b between summands i and j, identities elsewhere."""
        category = self.category
        field = self.field
        x, y = f.source[j], f.target[i]
        scalar = f.blocks[i][j][k]
        c_b, u_b, w_b = self._cones[x, y, k]
        w_b = w_b.scaled(field.inv(scalar))
        rest_y = [p for p in range(len(f.target)) if p != i]
        rest_x = [p for p in range(len(f.source)) if p != j]
        shifted = self.shift_object(f.source)
        cone = c_b + FormalObject(f.target[p] for p in rest_y) + FormalObject(shifted[p] for p in rest_x)
        u_entries: Dict[Tuple[int, int], np.ndarray] = {}
        for a in range(len(c_b)):
            u_entries[a, i] = u_b.blocks[a][0]
        for n, p in enumerate(rest_y):
            u_entries[len(c_b) + n, p] = category.identity_vector(f.target[p])
        w_entries: Dict[Tuple[int, int], np.ndarray] = {}
        for a in range(len(c_b)):
            w_entries[j, a] = w_b.blocks[0][a]
        for n, p in enumerate(rest_x):
            w_entries[p, len(c_b) + len(rest_y) + n] = category.identity_vector(shifted[p])
        return cone, self._assemble(f.target, cone, u_entries), self._assemble(cone, shifted, w_entries)

    def _assemble(self, source: FormalObject, target: FormalObject,
                  entries: Mapping[Tuple[int, int], np.ndarray]) -> BlockMorphism:
        c = self.category
        blocks: List[List[Optional[np.ndarray]]] = []
        for i, b in enumerate(target):
            row = []
            for j, a in enumerate(source):
                vector = entries.get((i, j))
                row.append(vector if vector is not None else self.field.zero_vector(c.hom_dim(a, b)))
            blocks.append(row)
        return c.morphism(source, target, blocks)
