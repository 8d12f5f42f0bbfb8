from typing import List, Optional, Sequence

import logging

import numpy as np

from linalg import Field, Mat
from .category import FiniteLinearCategory
from .exceptions import CategoryError, ShapeMismatch

logger = logging.getLogger(__name__)


class FiniteAlgebra:
    """A finite dimensional algebra given by structure constants.

    ``structure[i, j, :]`` holds the coordinates of ``b_i · b_j``. The
    algebra is the carrier of the abelian backends: its vertex category
    (one object per primitive idempotent) is the category whose
    contravariant functors are the modules we compute with.
    """

    def __init__(self, field: Field, names: Sequence[str], structure: np.ndarray,
                 unit: Sequence):
        self.field = field
        self.names = tuple(names)
        n = len(self.names)
        self.structure = field.asarray(structure)
        if self.structure.shape != (n, n, n):
            raise ShapeMismatch("structure constants of shape {} for an algebra of dimension {}"
                                .format(self.structure.shape, n))
        self.unit = field.asarray(np.asarray(unit))
        if self.unit.shape != (n,):
            raise ShapeMismatch("unit has {} coordinates, expected {}".format(len(self.unit), n))

    @property
    def dimension(self) -> int:
        return len(self.names)

    def multiply(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        partial = self.field.tensordot(u, self.structure, axes=([0], [0]))
        return self.field.tensordot(v, partial, axes=([0], [0]))

    def basis_vector(self, name: str) -> np.ndarray:
        return self.field.unit_vector(self.dimension, self.names.index(name))

    @classmethod
    def from_category(cls, category: FiniteLinearCategory) -> 'FiniteAlgebra':
        """The category algebra ⊕ Hom(X, Y) with g·f = g∘f."""
        field = category.field
        blocks, offsets, names = [], {}, []
        for x in category.labels:
            for y in category.labels:
                offsets[x, y] = len(names)
                names.extend('{}->{}#{}'.format(x, y, k) for k in range(category.hom_dim(x, y)))
                blocks.append((x, y))
        n = len(names)
        structure = np.zeros((n, n, n), dtype=field.dtype)
        unit = field.zero_vector(n)
        for x in category.labels:
            d = category.hom_dim(x, x)
            unit[offsets[x, x]:offsets[x, x] + d] = category.identity_vector(x)
        for (y, z) in blocks:
            for (x, y2) in blocks:
                if y2 != y:
                    continue
                tensor = category.composition_tensor(x, y, z)
                gz, fy, out = offsets[y, z], offsets[x, y], offsets[x, z]
                structure[gz:gz + tensor.shape[0], fy:fy + tensor.shape[1], out:out + tensor.shape[2]] = tensor
        return cls(field, names, structure, unit)

    def idempotents_of(self, category: FiniteLinearCategory) -> List[np.ndarray]:
        """The primitive idempotents e_X of a category algebra built by :py:meth:`from_category`."""
        result = []
        for x in category.labels:
            e = self.field.zero_vector(self.dimension)
            prefix = '{}->{}#'.format(x, x)
            positions = [i for i, name in enumerate(self.names) if name.startswith(prefix)]
            e[positions] = category.identity_vector(x)
            result.append(e)
        return result

    def vertex_category(self, idempotents: Optional[Sequence[np.ndarray]] = None,
                        labels: Optional[Sequence[str]] = None) -> FiniteLinearCategory:
        """The category with objects e_i and Hom(e_i, e_j) = e_j A e_i.

        Parameters
        ----------
        idempotents
            A complete set of orthogonal idempotents (default: the unit).
        labels
            Object labels (default: ``e0, e1, ...``).
        """
        field = self.field
        if idempotents is None:
            idempotents = [self.unit]
        idempotents = [field.asarray(np.asarray(e)) for e in idempotents]
        if labels is None:
            labels = ['e{}'.format(i) for i in range(len(idempotents))]
        self._check_idempotents(idempotents)
        n = self.dimension
        eye = field.eye(n)
        # Basis of e_j A e_i as columns in algebra coordinates.
        bases = {}
        for i, x in enumerate(labels):
            for j, y in enumerate(labels):
                images = [self.multiply(self.multiply(idempotents[j], eye[:, k]), idempotents[i])
                          for k in range(n)]
                matrix = np.stack(images, axis=1).astype(field.dtype) if images else field.zeros(0, 0)
                bases[x, y] = field.column_space(matrix)
        hom_dims = {key: basis.shape[1] for key, basis in bases.items()}
        composition = {}
        for x in labels:
            for y in labels:
                for z in labels:
                    f_basis, g_basis, out = bases[x, y], bases[y, z], bases[x, z]
                    tensor = np.zeros((g_basis.shape[1], f_basis.shape[1], out.shape[1]), dtype=field.dtype)
                    for k in range(g_basis.shape[1]):
                        for l in range(f_basis.shape[1]):
                            product = self.multiply(g_basis[:, k], f_basis[:, l])
                            tensor[k, l, :] = field.coordinates(out, product)
                    composition[x, y, z] = tensor
        identities = {x: field.coordinates(bases[x, x], idempotents[i]) for i, x in enumerate(labels)}
        logger.debug("vertex category with hom dimensions %s", hom_dims)
        return FiniteLinearCategory(field, labels, hom_dims, composition, identities)

    def _check_idempotents(self, idempotents: List[np.ndarray]) -> None:
        field = self.field
        total = field.zero_vector(self.dimension)
        for i, e in enumerate(idempotents):
            for j, f in enumerate(idempotents):
                product = self.multiply(e, f)
                expected = e if i == j else field.zero_vector(self.dimension)
                if not field.equal(product, expected):
                    raise CategoryError("idempotents {} and {} are not orthogonal idempotents".format(i, j))
            total = field.add(total, e)
        if not field.equal(total, self.unit):
            raise CategoryError("idempotents do not sum to the unit")
