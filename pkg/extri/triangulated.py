"""Triangulated categories as extriangulated ones: E(X, Z) = Hom(X, Z[1]).

A subclass supplies the shift on indecomposables, its action on hom
spaces and a cone for every morphism. Conflations are the rotations of
distinguished triangles: δ: X -> Z[1] with cone Z[1] -u-> C -w-> X[1]
is realized by Z -(-u[-1])-> C[-1] -(-w[-1])-> X.
"""
from typing import Dict, Optional, Tuple

import itertools
import logging

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism, Report
from .structure import ExtriStructure
from .triangle import ETriangle
from .caps import Caps
from .exceptions import StructureError

logger = logging.getLogger(__name__)

#: (C, u: Y -> C, w: C -> X[1]) for f: X -> Y
Cone = Tuple[FormalObject, BlockMorphism, BlockMorphism]


class TriangulatedStructure(ExtriStructure):
    """Abstract triangulated backend."""

    def __init__(self, category: FiniteLinearCategory):
        if self.__class__ == TriangulatedStructure:
            raise NotImplementedError
        super().__init__(category)
        self._unshift: Dict[str, str] = {}
        self._shift_matrices: Dict[Tuple[str, str], Mat] = {}

    # ------------ Public interface ----------------

    def shift_label(self, x: str) -> str:
        return self._shift_label(x)

    def unshift_label(self, x: str) -> str:
        if not self._unshift:
            for label in self.labels:
                self._unshift[self._shift_label(label)] = label
            if len(self._unshift) != len(self.labels):
                raise StructureError("shift is not a bijection on {}".format(list(self.labels)))
        return self._unshift[x]

    def shift_object(self, a) -> FormalObject:
        return FormalObject(self._shift_label(x) for x in self.object(a))

    def unshift_object(self, a) -> FormalObject:
        return FormalObject(self.unshift_label(x) for x in self.object(a))

    def shift_matrix(self, x: str, y: str) -> Mat:
        """Hom(X, Y) -> Hom(X[1], Y[1]) on indecomposables."""
        if (x, y) not in self._shift_matrices:
            self._shift_matrices[x, y] = self.field.asarray(np.asarray(self._shift_matrix(x, y)))
        return self._shift_matrices[x, y]

    def shift(self, f: BlockMorphism) -> BlockMorphism:
        field = self.field
        blocks = [[field.matmul(self.shift_matrix(x, y), f.blocks[i][j]) for j, x in enumerate(f.source)]
                  for i, y in enumerate(f.target)]
        return self.category.morphism(self.shift_object(f.source), self.shift_object(f.target), blocks)

    def unshift(self, f: BlockMorphism) -> BlockMorphism:
        """The morphism f' with f'[1] = f."""
        field = self.field
        source, target = self.unshift_object(f.source), self.unshift_object(f.target)
        blocks = [[field.matmul(field.inverse(self.shift_matrix(x, y)), f.blocks[i][j])
                   for j, x in enumerate(source)] for i, y in enumerate(target)]
        return self.category.morphism(source, target, blocks)

    def cone(self, f: BlockMorphism) -> Cone:
        """A distinguished triangle X -f-> Y -u-> C -w-> X[1]."""
        return self._cone(f)

    def complete_deflation(self, f: BlockMorphism) -> Optional[ETriangle]:
        # Y -f-> X -u-> C -w-> Y[1] rotated back: C[-1] -(-w[-1])-> Y -f-> X -u-> C
        _, u, w = self.cone(f)
        g = -self.unshift(w)
        return ETriangle(self, g.source, f.source, f.target, g, f, u.flat())

    def complete_inflation(self, g: BlockMorphism) -> Optional[ETriangle]:
        c, u, w = self.cone(g)
        return ETriangle(self, g.source, g.target, c, g, u, w.flat())

    def verify_shift(self) -> Report:
        """The shift is an autoequivalence: bijective on objects, invertible
        on hom spaces and compatible with composition."""
        report = Report('shift')
        c = self.category
        field = self.field
        try:
            self.unshift_label(self.labels[0])
            bijective = True
        except StructureError:
            bijective = False
        report.check('bijective', bijective, {'shift': {x: self._shift_label(x) for x in self.labels}})
        bad = [[x, y] for x, y in itertools.product(self.labels, repeat=2)
               if c.hom_dim(x, y) != c.hom_dim(self._shift_label(x), self._shift_label(y))
               or not field.is_invertible(self.shift_matrix(x, y))]
        report.check('hom_dimensions', not bad, {'pairs': bad})
        bad = []
        if not report.failures():
            for x, y, z in itertools.product(self.labels, repeat=3):
                for f, g in itertools.product(c.hom_basis(x, y), c.hom_basis(y, z)):
                    if not self.shift(g @ f).equals(self.shift(g) @ self.shift(f)):
                        bad.append([x, y, z])
                        break
            for x in self.labels:
                if not self.shift(c.identity(x)).equals(c.identity(self._shift_label(x))):
                    bad.append([x])
        report.check('functorial', not bad, {'objects': bad[:5]})
        return report

    def verify_structure(self, caps: Caps, rng: np.random.Generator = None) -> Report:
        report = self.verify_shift()
        if not report.passed:
            return report
        structure = super().verify_structure(caps, rng)
        structure.extend(report, prefix='shift')
        return structure

    def info(self) -> dict:
        info = super().info()
        info['shift'] = {x: self._shift_label(x) for x in self.labels}
        return info

    # ------------------- Things to be implemented by subclasses -------------------

    def _shift_label(self, x: str) -> str:
        """The indecomposable X[1].

        To be implemented by subclasses.
        """
        raise NotImplementedError

    def _shift_matrix(self, x: str, y: str) -> Mat:
        """Matrix of Hom(X, Y) -> Hom(X[1], Y[1]).

        To be implemented by subclasses.
        """
        raise NotImplementedError

    def _cone(self, f: BlockMorphism) -> Cone:
        """Cone data for f: X -> Y.

        To be implemented by subclasses.

        Raises
        ------
        MissingConeData
            If the backend cannot produce a cone for f.
        """
        raise NotImplementedError

    # ------------------- hooks -------------------

    def _e_dim(self, x: str, z: str) -> int:
        return self.category.hom_dim(x, self._shift_label(z))

    def _pullback_matrix(self, a: str, x: str, z: str, k: int) -> Mat:
        c = self.category
        field = self.field
        z1 = self._shift_label(z)
        h = field.unit_vector(c.hom_dim(a, x), k)
        n = c.hom_dim(x, z1)
        columns = [c.compose_vectors(a, x, z1, field.unit_vector(n, l), h) for l in range(n)]
        return self._columns(columns, c.hom_dim(a, z1))

    def _pushforward_matrix(self, x: str, z: str, c: str, k: int) -> Mat:
        category = self.category
        field = self.field
        z1, c1 = self._shift_label(z), self._shift_label(c)
        g1 = field.matmul(self.shift_matrix(z, c), field.unit_vector(category.hom_dim(z, c), k))
        n = category.hom_dim(x, z1)
        columns = [category.compose_vectors(x, z1, c1, g1, field.unit_vector(n, l)) for l in range(n)]
        return self._columns(columns, category.hom_dim(x, c1))

    def _realize(self, x: FormalObject, z: FormalObject, delta: np.ndarray) -> ETriangle:
        d = self.category.from_flat(x, self.shift_object(z), delta)
        _, u, w = self.cone(d)
        g = -self.unshift(u)
        f = -self.unshift(w)
        return ETriangle(self, z, g.target, x, g, f, delta)

    def _direct_e_dim(self, x: FormalObject, z: FormalObject) -> int:
        return self.category.hom_space_dim(x, self.shift_object(z))
