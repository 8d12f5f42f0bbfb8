"""Finitely presented functors as modules over the category algebra.

A module F over a :py:class:`FiniteLinearCategory` C is a contravariant
functor C -> vect. It is stored by its values F(X) (as dimensions) and,
for every hom basis element f: X -> Y, the action matrix
F(f): F(Y) -> F(X) of shape (dim F(X), dim F(Y)).
"""
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import itertools
import logging

import numpy as np

from linalg import Mat
from category import FiniteLinearCategory, FormalObject, BlockMorphism, NonLocalEndomorphisms, as_object
from .exceptions import ModuleError, NonSplitResidueField

logger = logging.getLogger(__name__)


class FpModule:
    """A finite dimensional module over a finite linear category.

    Parameters
    ----------
    category
        The category the functor is defined on.
    dims
        dim F(X) for every object label (missing labels are zero).
    actions
        For every pair (X, Y) an array of shape
        ``(dim Hom(X,Y), dim F(X), dim F(Y))`` stacking the matrices
        F(f_k) of the hom basis. Missing pairs act by zero.
    name
        Optional display name.
    """

    def __init__(self, category: FiniteLinearCategory, dims: Mapping[str, int],
                 actions: Mapping[Tuple[str, str], np.ndarray] = None, name: str = None):
        self.category = category
        field = category.field
        self.dims = {x: int(dims.get(x, 0)) for x in category.labels}
        self._actions = {}
        actions = actions or {}
        for (x, y), stack in actions.items():
            shape = (category.hom_dim(x, y), self.dims[x], self.dims[y])
            stack = field.asarray(np.asarray(stack)).reshape(shape)
            self._actions[x, y] = stack
        self.name = name

    # ------------ Public interface ----------------

    @property
    def field(self):
        return self.category.field

    def dim(self, x: str) -> int:
        return self.dims[x]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[x] for x in self.category.labels)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def support(self) -> List[str]:
        return [x for x in self.category.labels if self.dims[x]]

    def action_stack(self, x: str, y: str) -> np.ndarray:
        stack = self._actions.get((x, y))
        if stack is None:
            stack = np.zeros((self.category.hom_dim(x, y), self.dims[x], self.dims[y]),
                             dtype=self.field.dtype)
        return stack

    def basis_action(self, x: str, y: str, k: int) -> Mat:
        return self.action_stack(x, y)[k]

    def act(self, x: str, y: str, f: np.ndarray) -> Mat:
        """F(f): F(Y) -> F(X) for f in Hom(X, Y) given by coordinates."""
        return self.field.tensordot(f, self.action_stack(x, y), axes=([0], [0]))

    def act_morphism(self, f: BlockMorphism) -> Mat:
        """F(f) for a morphism between formal sums, as a block matrix."""
        rows = []
        for j, x in enumerate(f.source):
            rows.append(self.field.hstack([self.act(x, y, f.blocks[i][j]) for i, y in enumerate(f.target)],
                                          rows=self.dims[x]))
        return self.field.vstack(rows, cols=sum(self.dims[y] for y in f.target))

    def value_dim(self, a) -> int:
        return sum(self.dims[x] for x in as_object(a))

    def violations(self) -> List[dict]:
        """Functoriality violations: F(g∘f) = F(f)F(g) on basis pairs and F(id) = id."""
        field = self.field
        c = self.category
        result = []
        for x in c.labels:
            if not field.equal(self.act(x, x, c.identity_vector(x)), field.eye(self.dims[x])):
                result.append({'identity': x})
        for x, y, z in itertools.product(c.labels, repeat=3):
            for l in range(c.hom_dim(x, y)):
                f = field.unit_vector(c.hom_dim(x, y), l)
                for k in range(c.hom_dim(y, z)):
                    g = field.unit_vector(c.hom_dim(y, z), k)
                    left = self.act(x, z, c.compose_vectors(x, y, z, g, f))
                    right = field.matmul(self.act(x, y, f), self.act(y, z, g))
                    if not field.equal(left, right):
                        result.append({'objects': [x, y, z], 'basis': [l, k]})
        return result

    def check(self) -> 'FpModule':
        violations = self.violations()
        if violations:
            raise ModuleError("not a functor: {}".format(violations[:5]))
        return self

    def restrict(self, labels: Sequence[str],
                 subcategory: FiniteLinearCategory = None) -> 'FpModule':
        """The restriction to a full subcategory."""
        if subcategory is None:
            subcategory = self.category.full_subcategory(labels)
        labels = subcategory.labels
        return FpModule(subcategory, {x: self.dims[x] for x in labels},
                        {(x, y): self.action_stack(x, y) for x in labels for y in labels},
                        name=self.name)

    def __repr__(self) -> str:
        label = self.name or 'FpModule'
        return '{}{}'.format(label, self.dim_vector)

    def to_json(self) -> dict:
        return {'name': self.name, 'dims': dict(self.dims)}


class ModuleMap:
    """A natural transformation α: F -> G given by its components α_X."""

    def __init__(self, source: FpModule, target: FpModule,
                 components: Mapping[str, np.ndarray] = None):
        self.source = source
        self.target = target
        field = source.field
        self.components = {}
        components = components or {}
        for x in source.category.labels:
            shape = (target.dims[x], source.dims[x])
            matrix = components.get(x)
            if matrix is None:
                matrix = field.zeros(*shape)
            else:
                matrix = field.asarray(np.asarray(matrix))
            if matrix.shape != shape:
                raise ModuleError("component at {} has shape {}, expected {}".format(x, matrix.shape, shape))
            self.components[x] = matrix

    @property
    def field(self):
        return self.source.field

    @property
    def category(self) -> FiniteLinearCategory:
        return self.source.category

    def __getitem__(self, x: str) -> Mat:
        return self.components[x]

    def flat(self) -> np.ndarray:
        """All components, row-major, concatenated in label order."""
        parts = [self.components[x].reshape(-1) for x in self.category.labels]
        return np.concatenate(parts).astype(self.field.dtype) if parts else self.field.zero_vector(0)

    def compose(self, other: 'ModuleMap') -> 'ModuleMap':
        """self ∘ other."""
        field = self.field
        return ModuleMap(other.source, self.target,
                         {x: field.matmul(self.components[x], other.components[x])
                          for x in self.category.labels})

    def __matmul__(self, other: 'ModuleMap') -> 'ModuleMap':
        return self.compose(other)

    def __add__(self, other: 'ModuleMap') -> 'ModuleMap':
        return ModuleMap(self.source, self.target,
                         {x: self.field.add(m, other.components[x]) for x, m in self.components.items()})

    def __sub__(self, other: 'ModuleMap') -> 'ModuleMap':
        return ModuleMap(self.source, self.target,
                         {x: self.field.sub(m, other.components[x]) for x, m in self.components.items()})

    def scaled(self, c) -> 'ModuleMap':
        return ModuleMap(self.source, self.target,
                         {x: self.field.scale(c, m) for x, m in self.components.items()})

    def __neg__(self) -> 'ModuleMap':
        return self.scaled(-1)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.components.values())

    def equals(self, other: 'ModuleMap') -> bool:
        return all(self.field.equal(m, other.components[x]) for x, m in self.components.items())

    def is_injective(self) -> bool:
        return all(self.field.rank(m) == m.shape[1] for m in self.components.values())

    def is_surjective(self) -> bool:
        return all(self.field.rank(m) == m.shape[0] for m in self.components.values())

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def inverse(self) -> 'ModuleMap':
        return ModuleMap(self.target, self.source,
                         {x: self.field.inverse(m) for x, m in self.components.items()})

    def rank(self) -> int:
        return sum(self.field.rank(m) for m in self.components.values())

    def is_natural(self) -> bool:
        return not self.naturality_violations()

    def naturality_violations(self) -> List[dict]:
        field, c = self.field, self.category
        result = []
        for x, y in itertools.product(c.labels, repeat=2):
            for k in range(c.hom_dim(x, y)):
                left = field.matmul(self.components[x], self.source.basis_action(x, y, k))
                right = field.matmul(self.target.basis_action(x, y, k), self.components[y])
                if not field.equal(left, right):
                    result.append({'objects': [x, y], 'basis': k})
        return result

    def __repr__(self) -> str:
        return 'ModuleMap({} -> {})'.format(self.source, self.target)


# ------------ Constructions ----------------

def zero_module(category: FiniteLinearCategory) -> FpModule:
    return FpModule(category, {}, {}, name='0')


def identity_map(module: FpModule) -> ModuleMap:
    field = module.field
    return ModuleMap(module, module, {x: field.eye(d) for x, d in module.dims.items()})


def zero_map(source: FpModule, target: FpModule) -> ModuleMap:
    return ModuleMap(source, target)


def direct_sum(*modules: FpModule) -> FpModule:
    if not modules:
        raise ModuleError("direct sum of nothing needs a category; use zero_module")
    category = modules[0].category
    field = category.field
    dims = {x: sum(m.dims[x] for m in modules) for x in category.labels}
    actions = {}
    for x, y in itertools.product(category.labels, repeat=2):
        d = category.hom_dim(x, y)
        if not d:
            continue
        actions[x, y] = np.stack([field.block_diag([m.basis_action(x, y, k) for m in modules])
                                  for k in range(d)])
    names = [m.name for m in modules]
    name = '+'.join(names) if all(names) else None
    return FpModule(category, dims, actions, name=name)


def block_map(sources: Sequence[FpModule], targets: Sequence[FpModule],
              blocks: Sequence[Sequence[Optional[ModuleMap]]],
              source: FpModule = None, target: FpModule = None) -> ModuleMap:
    """Assemble a map between direct sums from its blocks.

    ``blocks[i][j]`` maps ``sources[j]`` to ``targets[i]``; None stands
    for zero. The sums may be passed in to avoid rebuilding them.
    """
    category = (sources or targets)[0].category
    field = category.field
    if source is None:
        source = direct_sum(*sources) if sources else zero_module(category)
    if target is None:
        target = direct_sum(*targets) if targets else zero_module(category)
    components = {}
    for x in category.labels:
        rows = []
        for i, t in enumerate(targets):
            row = []
            for j, s in enumerate(sources):
                block = blocks[i][j]
                row.append(block.components[x] if block is not None else field.zeros(t.dims[x], s.dims[x]))
            rows.append(field.hstack(row, rows=t.dims[x]))
        components[x] = field.vstack(rows, cols=source.dims[x])
    return ModuleMap(source, target, components)


def inclusions_and_projections(parts: Sequence[FpModule], total: FpModule = None
                               ) -> Tuple[FpModule, List[ModuleMap], List[ModuleMap]]:
    """Canonical maps of a direct sum."""
    if total is None:
        total = direct_sum(*parts)
    field = total.field
    inclusions, projections = [], []
    offsets = {x: 0 for x in total.category.labels}
    for part in parts:
        inc, proj = {}, {}
        for x in total.category.labels:
            d, o = part.dims[x], offsets[x]
            matrix = field.zeros(total.dims[x], d)
            for k in range(d):
                matrix[o + k, k] = 1
            inc[x] = matrix
            proj[x] = matrix.T.copy()
            offsets[x] = o + d
        inclusions.append(ModuleMap(part, total, inc))
        projections.append(ModuleMap(total, part, proj))
    return total, inclusions, projections


def yoneda(category: FiniteLinearCategory, a) -> FpModule:
    """The representable functor Hom(-, A) for a formal sum A.

    Its value at W is Hom(W, A) in the flat coordinates of
    :py:class:`BlockMorphism` (one block per summand of A), and a basis
    morphism f: W -> W' acts by h |-> h∘f.
    """
    a = category.object(a)
    field = category.field
    dims = {w: category.hom_space_dim(w, a) for w in category.labels}
    actions = {}
    for w, v in itertools.product(category.labels, repeat=2):
        d = category.hom_dim(w, v)
        if not d:
            continue
        stack = []
        for k in range(d):
            f = field.unit_vector(d, k)
            blocks = []
            for x in a:
                columns = [category.compose_vectors(w, v, x, field.unit_vector(category.hom_dim(v, x), m), f)
                           for m in range(category.hom_dim(v, x))]
                blocks.append(np.stack(columns, axis=1).astype(field.dtype) if columns
                              else field.zeros(category.hom_dim(w, x), 0))
            stack.append(field.block_diag(blocks))
        actions[w, v] = np.stack(stack)
    return FpModule(category, dims, actions, name='Y({})'.format(a))


def yoneda_map(f: BlockMorphism, source: FpModule = None, target: FpModule = None) -> ModuleMap:
    """Hom(-, f): Hom(-, A) -> Hom(-, B), h |-> f∘h."""
    category = f.category
    if source is None:
        source = yoneda(category, f.source)
    if target is None:
        target = yoneda(category, f.target)
    components = {w: category.postcompose_matrix(f, FormalObject((w,))) for w in category.labels}
    return ModuleMap(source, target, components)


def yoneda_element_map(target: FpModule, x: str, element: np.ndarray,
                       source: FpModule = None) -> ModuleMap:
    """The map Hom(-, X) -> G sending id_X to `element` of G(X)."""
    category = target.category
    field = category.field
    if source is None:
        source = yoneda(category, FormalObject((x,)))
    components = {}
    for w in category.labels:
        d = category.hom_dim(w, x)
        columns = [field.matmul(target.basis_action(w, x, k), element) for k in range(d)]
        components[w] = (np.stack(columns, axis=1).astype(field.dtype) if columns
                         else field.zeros(target.dims[w], 0))
    return ModuleMap(source, target, components)


def simple(category: FiniteLinearCategory, x: str) -> FpModule:
    """The simple top S_X of Hom(-, X): k at X, End(X) acting through its residue field."""
    try:
        residue = category.residue(x)
    except NonLocalEndomorphisms as error:
        raise NonSplitResidueField(str(error)) from error
    actions = {(x, x): residue.reshape(-1, 1, 1)}
    return FpModule(category, {x: 1}, actions, name='S({})'.format(x))


def element_of(module: FpModule, x: str, index: int) -> np.ndarray:
    return module.field.unit_vector(module.dims[x], index)
