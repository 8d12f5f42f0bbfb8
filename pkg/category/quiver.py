"""Bound path algebras of quivers.

Paths are tuples of arrow names read left to right; ``p · q`` is the
concatenation when ``p`` ends where ``q`` starts and zero otherwise.
An arrow ``a: i -> j`` therefore lies in ``e_i A e_j``, which in the
vertex category is a morphism from ``j`` to ``i``: the contravariant
functors on the vertex category are exactly the representations of the
quiver.
"""
from typing import List, Sequence, Tuple

import logging

import numpy as np

from linalg import Field, parse_scalar
from .algebra import FiniteAlgebra
from .category import FiniteLinearCategory
from .exceptions import CategoryError

logger = logging.getLogger(__name__)

Path = Tuple[str, ...]


class Quiver:
    """A finite quiver with relations and a bound on path length.

    Parameters
    ----------
    vertices
        Vertex names, which become the object labels.
    arrows
        Triples ``(name, source, target)``.
    relations
        Linear combinations of paths given as lists of
        ``(coefficient, path)`` pairs; the ideal they generate is
        factored out.
    bound
        Paths longer than the bound are zero.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]],
                 relations: Sequence[Sequence[Tuple[object, Sequence[str]]]] = (),
                 bound: int = 2):
        self.vertices = tuple(vertices)
        self.arrows = {}
        for name, source, target in arrows:
            if source not in self.vertices or target not in self.vertices:
                raise CategoryError("arrow {} joins unknown vertices {} -> {}".format(name, source, target))
            if name in self.arrows or name in self.vertices:
                raise CategoryError("duplicate arrow name {}".format(name))
            self.arrows[name] = (source, target)
        self.relations = [[(parse_scalar(c), tuple(path)) for c, path in relation] for relation in relations]
        for relation in self.relations:
            for _, path in relation:
                self._endpoints(path)
        if bound < 0:
            raise CategoryError("negative path length bound")
        self.bound = bound

    def paths(self) -> List[Tuple[str, Path]]:
        """All paths of length <= bound as (start vertex, arrows), by length."""
        result = [(v, ()) for v in self.vertices]
        layer = list(result)
        for _ in range(self.bound):
            longer = []
            for start, path in layer:
                end = self._end(start, path)
                for name, (source, target) in self.arrows.items():
                    if source == end:
                        longer.append((start, path + (name,)))
            result.extend(longer)
            layer = longer
        return result

    def path_algebra(self, field: Field) -> Tuple[FiniteAlgebra, List[np.ndarray]]:
        """The bound path algebra and its vertex idempotents."""
        paths = self.paths()
        index = {p: i for i, p in enumerate(paths)}
        n = len(paths)

        def vector_of(combination) -> np.ndarray:
            v = field.zero_vector(n)
            for c, key in combination:
                if key in index:
                    v[index[key]] = field.add(v[index[key]], field.element(c))
            return v

        # Generators of the ideal: u · r · w for paths u, w around every relation.
        generators = []
        for relation in self.relations:
            start, end = self._endpoints(relation[0][1])
            for u_start, u in paths:
                if self._end(u_start, u) != start:
                    continue
                for w_start, w in paths:
                    if w_start != end:
                        continue
                    terms = [(c, (u_start, u + path)) for c, path in relation
                             if len(u) + len(path) + len(w) <= self.bound]
                    terms = [(c, (s, p + w)) for c, (s, p) in terms]
                    generators.append(vector_of(terms))
        ideal = (np.stack(generators, axis=1).astype(field.dtype) if generators else field.zeros(n, 0))
        ideal = field.column_space(ideal)
        complement = field.complement_basis(ideal)
        kept = [int(np.nonzero(complement[:, k])[0][0]) for k in range(complement.shape[1])]
        basis_paths = [paths[i] for i in kept]
        logger.info("bound path algebra of dimension %d (ideal of dimension %d)",
                    len(basis_paths), ideal.shape[1])
        reducer = np.hstack([complement, ideal]).astype(field.dtype)

        def reduce(v: np.ndarray) -> np.ndarray:
            return field.coordinates(reducer, v)[:len(basis_paths)]

        m = len(basis_paths)
        structure = np.zeros((m, m, m), dtype=field.dtype)
        for i, (s1, p1) in enumerate(basis_paths):
            for j, (s2, p2) in enumerate(basis_paths):
                if self._end(s1, p1) != s2:
                    continue
                product = (s1, p1 + p2)
                if product in index:
                    structure[i, j, :] = reduce(field.unit_vector(n, index[product]))
        unit = field.zero_vector(m)
        idempotents = []
        for v in self.vertices:
            e = field.zero_vector(m)
            e[basis_paths.index((v, ()))] = 1
            idempotents.append(e)
            unit = field.add(unit, e)
        names = [self._name(s, p) for s, p in basis_paths]
        return FiniteAlgebra(field, names, structure, unit), idempotents

    def vertex_category(self, field: Field) -> FiniteLinearCategory:
        algebra, idempotents = self.path_algebra(field)
        return algebra.vertex_category(idempotents, self.vertices)

    # ------------------- private helpers -------------------

    def _end(self, start: str, path: Path) -> str:
        return self.arrows[path[-1]][1] if path else start

    def _endpoints(self, path: Sequence[str]) -> Tuple[str, str]:
        if not path:
            raise CategoryError("relations must be combinations of paths of positive length")
        for name in path:
            if name not in self.arrows:
                raise CategoryError("unknown arrow {!r} in relation".format(name))
        for first, second in zip(path, path[1:]):
            if self.arrows[first][1] != self.arrows[second][0]:
                raise CategoryError("{} is not a path".format('.'.join(path)))
        return self.arrows[path[0]][0], self.arrows[path[-1]][1]

    @staticmethod
    def _name(start: str, path: Path) -> str:
        return '.'.join(path) if path else 'e_{}'.format(start)
