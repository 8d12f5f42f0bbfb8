"""Finite k-linear Krull-Schmidt categories given by structure constants."""
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import logging

import numpy as np
from frozendict import frozendict

from linalg import Field, Mat
from .objects import FormalObject, BlockMorphism, as_object
from .exceptions import CategoryError, ShapeMismatch, NonLocalEndomorphisms

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]
Triple = Tuple[str, str, str]


class FiniteLinearCategory:
    """A finite set of indecomposable objects with chosen hom bases.

    For labels X, Y the hom space Hom(X, Y) has dimension
    ``hom_dims[X, Y]`` and every morphism is a coordinate vector in the
    chosen basis. Composition is given by tensors
    ``composition[X, Y, Z]`` of shape ``(dim Hom(Y,Z), dim Hom(X,Y),
    dim Hom(X,Z))``: entry ``[k, l, :]`` holds the coordinates of
    ``g_k ∘ f_l``.

    Objects of the additive closure are :py:class:`FormalObject`s and
    morphisms between them :py:class:`BlockMorphism`s.
    """

    def __init__(self, field: Field, labels: Sequence[str],
                 hom_dims: Mapping[Pair, int],
                 composition: Mapping[Triple, np.ndarray],
                 identities: Mapping[str, Sequence]):
        self._field = field
        self._labels = tuple(labels)
        if len(set(self._labels)) != len(self._labels):
            raise CategoryError("duplicate object labels in {}".format(self._labels))
        self._index = {label: i for i, label in enumerate(self._labels)}
        self._hom_dims = frozendict({(x, y): int(hom_dims.get((x, y), 0))
                                     for x in self._labels for y in self._labels})
        for key in hom_dims:
            self._check_labels(*key)
        self._composition = {}
        for (x, y, z), tensor in composition.items():
            self._check_labels(x, y, z)
            shape = (self.hom_dim(y, z), self.hom_dim(x, y), self.hom_dim(x, z))
            tensor = field.asarray(tensor).reshape(shape)
            self._composition[x, y, z] = tensor
        self._identities = {}
        for x in self._labels:
            if x not in identities:
                raise CategoryError("no identity given for object {}".format(x))
            vector = field.asarray(np.asarray(identities[x]))
            if vector.shape != (self.hom_dim(x, x),):
                raise ShapeMismatch("identity of {} has wrong length {}".format(x, vector.shape))
            self._identities[x] = vector
        self._residues = {}

    # ------------ Public interface ----------------

    @property
    def field(self) -> Field:
        return self._field

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    def index(self, label: str) -> int:
        return self._index[label]

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self._labels)

    def hom_dim(self, x: str, y: str) -> int:
        return self._hom_dims[x, y]

    def composition_tensor(self, x: str, y: str, z: str) -> np.ndarray:
        tensor = self._composition.get((x, y, z))
        if tensor is None:
            tensor = np.zeros((self.hom_dim(y, z), self.hom_dim(x, y), self.hom_dim(x, z)),
                              dtype=self._field.dtype)
        return tensor

    def identity_vector(self, x: str) -> np.ndarray:
        return self._identities[x]

    def compose_vectors(self, x: str, y: str, z: str,
                        g: np.ndarray, f: np.ndarray) -> np.ndarray:
        """Coordinates of g∘f for g: Y -> Z and f: X -> Y."""
        tensor = self.composition_tensor(x, y, z)
        partial = self._field.tensordot(g, tensor, axes=([0], [0]))
        return self._field.tensordot(f, partial, axes=([0], [0]))

    def total_dimension(self) -> int:
        """Dimension of the category algebra."""
        return sum(self._hom_dims.values())

    def object(self, value) -> FormalObject:
        obj = as_object(value)
        self._check_labels(*obj)
        return obj

    def hom_space_dim(self, a, b) -> int:
        a, b = as_object(a), as_object(b)
        return sum(self.hom_dim(x, y) for y in b for x in a)

    # morphism constructors

    def morphism(self, a, b, blocks) -> BlockMorphism:
        a, b = self.object(a), self.object(b)
        blocks = tuple(tuple(self._field.asarray(v) if isinstance(v, np.ndarray) else self._field.vector(v)
                             for v in row) for row in blocks)
        return BlockMorphism(self, a, b, blocks)

    def zero(self, a, b) -> BlockMorphism:
        a, b = self.object(a), self.object(b)
        blocks = tuple(tuple(self._field.zero_vector(self.hom_dim(x, y)) for x in a) for y in b)
        return BlockMorphism(self, a, b, blocks)

    def identity(self, a) -> BlockMorphism:
        a = self.object(a)
        blocks = tuple(tuple(self._identities[x] if i == j else self._field.zero_vector(self.hom_dim(x, y))
                             for j, x in enumerate(a)) for i, y in enumerate(a))
        return BlockMorphism(self, a, a, blocks)

    def from_vector(self, x: str, y: str, vector: np.ndarray) -> BlockMorphism:
        """A morphism between two indecomposables."""
        return BlockMorphism(self, FormalObject((x,)), FormalObject((y,)),
                             ((self._field.asarray(vector),),))

    def basis_morphism(self, x: str, y: str, k: int) -> BlockMorphism:
        return self.from_vector(x, y, self._field.unit_vector(self.hom_dim(x, y), k))

    def hom_basis(self, x: str, y: str) -> List[BlockMorphism]:
        return [self.basis_morphism(x, y, k) for k in range(self.hom_dim(x, y))]

    def from_flat(self, a, b, flat: np.ndarray) -> BlockMorphism:
        """Inverse of :py:meth:`BlockMorphism.flat`."""
        a, b = as_object(a), as_object(b)
        blocks, offset = [], 0
        for y in b:
            row = []
            for x in a:
                d = self.hom_dim(x, y)
                row.append(self._field.asarray(flat[offset:offset + d]))
                offset += d
            blocks.append(tuple(row))
        if offset != len(flat):
            raise ShapeMismatch("flat vector of length {} does not fit {} -> {}".format(len(flat), a, b))
        return BlockMorphism(self, a, b, tuple(blocks))

    def row(self, morphisms: Sequence[BlockMorphism], target=None) -> BlockMorphism:
        """The morphism A_1 + ... + A_n -> B given by maps A_i -> B."""
        if not morphisms:
            return self.zero(FormalObject.zero(), target)
        target = morphisms[0].target
        source = FormalObject(())
        for f in morphisms:
            if f.target != target:
                raise ShapeMismatch("row entries need a common target")
            source = source + f.source
        blocks = tuple(tuple(v for f in morphisms for v in f.blocks[i]) for i in range(len(target)))
        return BlockMorphism(self, source, target, blocks)

    def column(self, morphisms: Sequence[BlockMorphism], source=None) -> BlockMorphism:
        """The morphism A -> B_1 + ... + B_n given by maps A -> B_i."""
        if not morphisms:
            return self.zero(source, FormalObject.zero())
        source = morphisms[0].source
        target = FormalObject(())
        blocks = []
        for f in morphisms:
            if f.source != source:
                raise ShapeMismatch("column entries need a common source")
            target = target + f.target
            blocks.extend(f.blocks)
        return BlockMorphism(self, source, target, tuple(blocks))

    def direct_sum(self, *morphisms: BlockMorphism) -> BlockMorphism:
        source = FormalObject(())
        target = FormalObject(())
        for f in morphisms:
            source, target = source + f.source, target + f.target
        blocks = []
        s_offset = 0
        for f in morphisms:
            for i, y in enumerate(f.target):
                row = []
                for j, x in enumerate(source):
                    local = j - s_offset
                    if 0 <= local < len(f.source):
                        row.append(f.blocks[i][local])
                    else:
                        row.append(self._field.zero_vector(self.hom_dim(x, y)))
                blocks.append(tuple(row))
            s_offset += len(f.source)
        return BlockMorphism(self, source, target, tuple(blocks))

    def inclusion(self, a, positions: Sequence[int]) -> BlockMorphism:
        """Inclusion of the summands at `positions` into `a`."""
        a = as_object(a)
        part = FormalObject(a[p] for p in positions)
        blocks = tuple(tuple(self._identities[x] if positions[j] == i else self._field.zero_vector(self.hom_dim(x, y))
                             for j, x in enumerate(part)) for i, y in enumerate(a))
        return BlockMorphism(self, part, a, blocks)

    def projection(self, a, positions: Sequence[int]) -> BlockMorphism:
        """Projection of `a` onto the summands at `positions`."""
        a = as_object(a)
        part = FormalObject(a[p] for p in positions)
        blocks = tuple(tuple(self._identities[x] if positions[i] == j else self._field.zero_vector(self.hom_dim(x, y))
                             for j, x in enumerate(a)) for i, y in enumerate(part))
        return BlockMorphism(self, a, part, blocks)

    def permutation(self, a, order: Sequence[int]) -> BlockMorphism:
        """The isomorphism a -> a' where a'[i] = a[order[i]]."""
        return self.projection(a, order)

    def adopt(self, f: BlockMorphism) -> BlockMorphism:
        """Re-home a morphism of a category with the same tables."""
        if f.category is self:
            return f
        return BlockMorphism(self, f.source, f.target, f.blocks)

    # composition

    def compose(self, g: BlockMorphism, f: BlockMorphism) -> BlockMorphism:
        """The composite g∘f, blockwise through the structure constants."""
        if f.target != g.source:
            raise ShapeMismatch("cannot compose {} -> {} after {} -> {}"
                                .format(g.source, g.target, f.source, f.target))
        blocks = []
        for i, z in enumerate(g.target):
            row = []
            for j, x in enumerate(f.source):
                total = self._field.zero_vector(self.hom_dim(x, z))
                for k, y in enumerate(f.target):
                    gv, fv = g.blocks[i][k], f.blocks[k][j]
                    if len(gv) and len(fv):
                        total = self._field.add(total, self.compose_vectors(x, y, z, gv, fv))
                row.append(total)
            blocks.append(tuple(row))
        return BlockMorphism(self, f.source, g.target, tuple(blocks))

    def postcompose_matrix(self, g: BlockMorphism, a) -> Mat:
        """Matrix of Hom(A, B) -> Hom(A, C), f |-> g∘f, in flat coordinates."""
        a = as_object(a)
        n = self.hom_space_dim(a, g.source)
        columns = [self.compose(g, self.from_flat(a, g.source, self._field.unit_vector(n, k))).flat()
                   for k in range(n)]
        return self._columns(columns, self.hom_space_dim(a, g.target))

    def precompose_matrix(self, f: BlockMorphism, c) -> Mat:
        """Matrix of Hom(B, C) -> Hom(A, C), g |-> g∘f, in flat coordinates."""
        c = as_object(c)
        n = self.hom_space_dim(f.target, c)
        columns = [self.compose(self.from_flat(f.target, c, self._field.unit_vector(n, k)), f).flat()
                   for k in range(n)]
        return self._columns(columns, self.hom_space_dim(f.source, c))

    def inverse(self, f: BlockMorphism) -> Optional[BlockMorphism]:
        """The inverse of `f`, or None if `f` is not an isomorphism."""
        if not f.source.same_multiset(f.target):
            return None
        post = self.postcompose_matrix(f, f.target)
        x = self._field.solve(post, self.identity(f.target).flat())
        if x is None:
            return None
        g = self.from_flat(f.target, f.source, x)
        if not self.compose(g, f).equals(self.identity(f.source)):
            return None
        return g

    def is_isomorphism(self, f: BlockMorphism) -> bool:
        return self.inverse(f) is not None

    # radical

    def residue(self, x: str) -> np.ndarray:
        """The functional End(X) -> k whose kernel is the radical.

        Raises
        ------
        NonLocalEndomorphisms
            If End(X) is not local with residue field k.
        """
        if x not in self._residues:
            self._residues[x] = self._compute_residue(x)
        return self._residues[x]

    def in_radical(self, f: BlockMorphism) -> bool:
        """True iff no component between equal indecomposables is invertible."""
        for i, y in enumerate(f.target):
            for j, x in enumerate(f.source):
                if x == y and self._field.matmul(self.residue(x), f.blocks[i][j]) != 0:
                    return False
        return True

    def radical_basis(self, x: str, y: str) -> Mat:
        """Basis (as columns) of rad(X, Y) inside Hom(X, Y)."""
        d = self.hom_dim(x, y)
        if x != y:
            return self._field.eye(d)
        return self._field.kernel_basis(self.residue(x).reshape(1, -1))

    def left_multiplication(self, x: str, b: np.ndarray) -> Mat:
        """Matrix of End(X) -> End(X), a |-> b∘a."""
        d = self.hom_dim(x, x)
        return self._columns([self.compose_vectors(x, x, x, b, self._field.unit_vector(d, k))
                              for k in range(d)], d)

    # subcategories and algebras

    def full_subcategory(self, labels: Iterable[str]) -> 'FiniteLinearCategory':
        labels = [label for label in labels]
        self._check_labels(*labels)
        return FiniteLinearCategory(
            self._field, labels,
            {(x, y): self.hom_dim(x, y) for x in labels for y in labels},
            {(x, y, z): self.composition_tensor(x, y, z)
             for x in labels for y in labels for z in labels},
            {x: self._identities[x] for x in labels})

    def category_algebra(self):
        """The algebra ⊕ Hom(X, Y) with product g·f = g∘f (zero if not composable)."""
        from .algebra import FiniteAlgebra
        return FiniteAlgebra.from_category(self)

    def info(self) -> dict:
        return {
            'objects': list(self._labels),
            'hom_dims': {'{}->{}'.format(x, y): d for (x, y), d in self._hom_dims.items() if d},
            'algebra_dimension': self.total_dimension(),
        }

    def __repr__(self) -> str:
        return 'FiniteLinearCategory({})'.format(', '.join(self._labels))

    # ------------------- private helpers -------------------

    def _check_labels(self, *labels: str) -> None:
        for label in labels:
            if label not in self._index:
                raise CategoryError("unknown object label {!r}".format(label))

    def _columns(self, columns: List[np.ndarray], rows: int) -> Mat:
        if not columns:
            return self._field.zeros(rows, 0)
        return np.stack(columns, axis=1).astype(self._field.dtype)

    def _compute_residue(self, x: str) -> np.ndarray:
        field = self._field
        d = self.hom_dim(x, x)
        if d == 0:
            raise NonLocalEndomorphisms("End({}) is zero".format(x))
        identity = self._identities[x]
        shifted, eigenvalues = [], []
        for k in range(d):
            b = field.unit_vector(d, k)
            roots = field.eigenvalues(self.left_multiplication(x, b))
            if len(roots) != 1:
                raise NonLocalEndomorphisms(
                    "basis element {} of End({}) has eigenvalues {} in {}; "
                    "End({}) is not local with residue field {}".format(k, x, roots, field, x, field))
            eigenvalues.append(roots[0])
            shifted.append(field.sub(b, field.scale(roots[0], identity)))
        residue = field.vector(eigenvalues)
        nil = field.column_space(self._columns(shifted, d))
        if nil.shape[1] != d - 1 or field.matmul(residue, identity) != 1:
            raise NonLocalEndomorphisms("End({}) has no codimension one radical".format(x))
        # The candidate radical must be a nilpotent two-sided ideal.
        for k in range(d):
            b = field.unit_vector(d, k)
            for n in nil.T:
                left = self.compose_vectors(x, x, x, b, n)
                right = self.compose_vectors(x, x, x, n, b)
                if not field.in_span(nil, left) or not field.in_span(nil, right):
                    raise NonLocalEndomorphisms("non-invertible endomorphisms of {} do not form an ideal"
                                                .format(x))
        power = nil
        for _ in range(d):
            if power.shape[1] == 0:
                break
            products = []
            for p in power.T:
                for n in nil.T:
                    products.append(self.compose_vectors(x, x, x, p, n))
            power = field.column_space(self._columns(products, d))
        if power.shape[1] != 0:
            raise NonLocalEndomorphisms("radical of End({}) is not nilpotent".format(x))
        return residue

