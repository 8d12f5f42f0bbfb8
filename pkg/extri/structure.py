"""Extriangulated structures on finite linear categories.

An :py:class:`ExtriStructure` provides the bifunctor E on indecomposable
objects (dimensions and the linear maps induced by hom basis elements)
and a realization of every extension by a conflation. Everything on
formal sums is derived from this by biadditivity: an element of
E(X_1 + ... + X_m, Z_1 + ... + Z_n) is a list of blocks δ_ij in
E(X_j, Z_i), stored target-major like the blocks of a morphism.
"""
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import itertools
import logging

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from linalg import Mat, multiplicity_vectors, normalized_vectors
from category import FiniteLinearCategory, FormalObject, BlockMorphism, as_object, Report
from functors import FpModule, ModuleMap, yoneda, yoneda_map
from .caps import Caps
from .triangle import ETriangle
from .exceptions import StructureError, RealizationError, MissingConeData

logger = logging.getLogger(__name__)

#: positions of the long exact sequence (-,Z) -> (-,Y) -> (-,X) -> E(-,Z) -> E(-,Y) -> E(-,X)
LONG_EXACT_POSITIONS = ('(-,Y)', '(-,X)', 'E(-,Z)', 'E(-,Y)')


@dataclass
class StructureFlags:
    """Structural properties observed on enumerated conflations."""

    inflations_mono: bool = True
    deflations_epi: bool = True
    all_morphisms_conflations: bool = True
    exhaustive: bool = True
    witnesses: Dict[str, object] = dataclass_field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.inflations_mono and self.deflations_epi

    def to_json(self) -> dict:
        return {
            'inflations_mono': self.inflations_mono,
            'deflations_epi': self.deflations_epi,
            'all_morphisms_conflations': self.all_morphisms_conflations,
            'exhaustive': self.exhaustive,
            'witnesses': self.witnesses,
        }


@dataclass(frozen=True, eq=False)
class SquareData:
    """A realized pullback or pushout with its morphism of triangles and
    the auxiliary E-triangle through the direct sum."""

    triangle: ETriangle
    morphism: BlockMorphism
    auxiliary: ETriangle
    report: Report


class ExtriStructure:
    """Abstract extriangulated structure (E, s) on a finite linear category.

    Subclasses implement the bifunctor on indecomposables and the
    realization; this class derives formal sums, the functors E(-, Z),
    the long exact sequence and conflation enumeration.
    """

    tag = None

    def __init__(self, category: FiniteLinearCategory):
        if self.__class__ == ExtriStructure:
            raise NotImplementedError
        self._category = category
        self._e_dims = {}
        self._pullback_tensors = {}
        self._pushforward_tensors = {}
        self._e_functors = {}

    # ------------ Public interface ----------------

    @property
    def category(self) -> FiniteLinearCategory:
        return self._category

    @property
    def field(self):
        return self._category.field

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._category.labels

    def object(self, value) -> FormalObject:
        return self._category.object(value)

    def label_e_dim(self, x: str, z: str) -> int:
        if (x, z) not in self._e_dims:
            self._e_dims[x, z] = int(self._e_dim(x, z))
        return self._e_dims[x, z]

    def e_dim(self, x, z) -> int:
        """dim E(X, Z) for formal sums."""
        x, z = as_object(x), as_object(z)
        return sum(self.label_e_dim(a, c) for c in z for a in x)

    def e_space(self, x, z) -> Tuple[int, Mat]:
        """Dimension and basis (as columns) of E(X, Z)."""
        n = self.e_dim(x, z)
        return n, self.field.eye(n)

    def e_blocks(self, x, z, delta: np.ndarray) -> List[List[np.ndarray]]:
        """Split δ in E(X, Z) into blocks ``[i][j]`` in E(X_j, Z_i)."""
        x, z = as_object(x), as_object(z)
        blocks, offset = [], 0
        for c in z:
            row = []
            for a in x:
                d = self.label_e_dim(a, c)
                row.append(delta[offset:offset + d])
                offset += d
            blocks.append(row)
        return blocks

    def e_from_blocks(self, blocks: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
        parts = [np.asarray(b) for row in blocks for b in row]
        if not parts:
            return self.field.zero_vector(0)
        return self.field.asarray(np.concatenate(parts).astype(self.field.dtype))

    def e_direct_sum(self, x1, z1, delta1, x2, z2, delta2) -> np.ndarray:
        """δ ⊕ δ' in E(X ⊕ X', Z ⊕ Z')."""
        x1, z1, x2, z2 = (as_object(o) for o in (x1, z1, x2, z2))
        first, second = self.e_blocks(x1, z1, delta1), self.e_blocks(x2, z2, delta2)
        field = self.field
        blocks = []
        for i, c in enumerate(z1 + z2):
            row = []
            for j, a in enumerate(x1 + x2):
                if i < len(z1) and j < len(x1):
                    row.append(first[i][j])
                elif i >= len(z1) and j >= len(x1):
                    row.append(second[i - len(z1)][j - len(x1)])
                else:
                    row.append(field.zero_vector(self.label_e_dim(a, c)))
            blocks.append(row)
        return self.e_from_blocks(blocks)

    def pullback_tensor(self, a: str, x: str, z: str) -> np.ndarray:
        """Shape ``(dim Hom(A,X), dim E(A,Z), dim E(X,Z))``: h_k^* on E(X, Z)."""
        key = (a, x, z)
        if key not in self._pullback_tensors:
            d = self._category.hom_dim(a, x)
            shape = (self.label_e_dim(a, z), self.label_e_dim(x, z))
            stack = [self.field.asarray(self._pullback_matrix(a, x, z, k)).reshape(shape) for k in range(d)]
            self._pullback_tensors[key] = (np.stack(stack) if stack
                                           else np.zeros((0,) + shape, dtype=self.field.dtype))
        return self._pullback_tensors[key]

    def pushforward_tensor(self, x: str, z: str, c: str) -> np.ndarray:
        """Shape ``(dim Hom(Z,C), dim E(X,C), dim E(X,Z))``: (h_k)_* on E(X, Z)."""
        key = (x, z, c)
        if key not in self._pushforward_tensors:
            d = self._category.hom_dim(z, c)
            shape = (self.label_e_dim(x, c), self.label_e_dim(x, z))
            stack = [self.field.asarray(self._pushforward_matrix(x, z, c, k)).reshape(shape) for k in range(d)]
            self._pushforward_tensors[key] = (np.stack(stack) if stack
                                              else np.zeros((0,) + shape, dtype=self.field.dtype))
        return self._pushforward_tensors[key]

    def pullback(self, delta: np.ndarray, h: BlockMorphism, z) -> np.ndarray:
        """h^*δ in E(A, Z) for δ in E(X, Z) and h: A -> X."""
        field = self.field
        z = as_object(z)
        blocks = self.e_blocks(h.target, z, delta)
        result = []
        for i, c in enumerate(z):
            row = []
            for k, a in enumerate(h.source):
                total = field.zero_vector(self.label_e_dim(a, c))
                for j, x in enumerate(h.target):
                    matrix = field.tensordot(h.blocks[j][k], self.pullback_tensor(a, x, c), axes=([0], [0]))
                    total = field.add(total, field.matmul(matrix, blocks[i][j]))
                row.append(total)
            result.append(row)
        return self.e_from_blocks(result)

    def pushforward(self, delta: np.ndarray, g: BlockMorphism, x) -> np.ndarray:
        """g_*δ in E(X, C) for δ in E(X, Z) and g: Z -> C."""
        field = self.field
        x = as_object(x)
        blocks = self.e_blocks(x, g.source, delta)
        result = []
        for l, c in enumerate(g.target):
            row = []
            for j, a in enumerate(x):
                total = field.zero_vector(self.label_e_dim(a, c))
                for i, z in enumerate(g.source):
                    matrix = field.tensordot(g.blocks[l][i], self.pushforward_tensor(a, z, c), axes=([0], [0]))
                    total = field.add(total, field.matmul(matrix, blocks[i][j]))
                row.append(total)
            result.append(row)
        return self.e_from_blocks(result)

    def pullback_matrix(self, h: BlockMorphism, z) -> Mat:
        n = self.e_dim(h.target, z)
        columns = [self.pullback(self.field.unit_vector(n, k), h, z) for k in range(n)]
        return self._columns(columns, self.e_dim(h.source, z))

    def pushforward_matrix(self, g: BlockMorphism, x) -> Mat:
        n = self.e_dim(x, g.source)
        columns = [self.pushforward(self.field.unit_vector(n, k), g, x) for k in range(n)]
        return self._columns(columns, self.e_dim(x, g.target))

    def e_functor(self, z) -> FpModule:
        """The contravariant functor E(-, Z) as a module."""
        z = self.object(z)
        if z not in self._e_functors:
            c = self._category
            dims = {w: self.e_dim(w, z) for w in c.labels}
            actions = {}
            for w, v in itertools.product(c.labels, repeat=2):
                d = c.hom_dim(w, v)
                if not d or not dims[w] or not dims[v]:
                    continue
                actions[w, v] = np.stack([self.pullback_matrix(c.basis_morphism(w, v, k), z) for k in range(d)])
            self._e_functors[z] = FpModule(c, dims, actions, name='E(-,{})'.format(z))
        return self._e_functors[z]

    def delta_sharp(self, x, z, delta: np.ndarray, source: FpModule = None,
                    target: FpModule = None) -> ModuleMap:
        """δ♯: (-, X) -> E(-, Z), h |-> h^*δ."""
        x, z = self.object(x), self.object(z)
        c = self._category
        source = source or yoneda(c, x)
        target = target or self.e_functor(z)
        components = {}
        for w in c.labels:
            n = c.hom_space_dim(w, x)
            columns = [self.pullback(delta, c.from_flat(w, x, self.field.unit_vector(n, k)), z)
                       for k in range(n)]
            components[w] = self._columns(columns, target.dims[w])
        return ModuleMap(source, target, components)

    def pushforward_map(self, g: BlockMorphism, source: FpModule = None,
                        target: FpModule = None) -> ModuleMap:
        """g_*: E(-, Z) -> E(-, C)."""
        source = source or self.e_functor(g.source)
        target = target or self.e_functor(g.target)
        return ModuleMap(source, target, {w: self.pushforward_matrix(g, w) for w in self._category.labels})

    def split_triangle(self, x, z) -> ETriangle:
        """Z -> Z + X -> X with the zero extension."""
        x, z = self.object(x), self.object(z)
        c = self._category
        y = z + x
        g = c.inclusion(y, list(range(len(z))))
        f = c.projection(y, list(range(len(z), len(y))))
        return ETriangle(self, z, y, x, g, f, self.field.zero_vector(self.e_dim(x, z)))

    def realize(self, x, z, delta) -> ETriangle:
        """A conflation realizing δ in E(X, Z); the split one for δ = 0.

        Raises
        ------
        RealizationError
            If the backend cannot realize δ.
        """
        x, z = self.object(x), self.object(z)
        delta = self.field.asarray(np.asarray(delta))
        if len(delta) != self.e_dim(x, z):
            raise StructureError("extension has {} coordinates, E({}, {}) has dimension {}"
                                 .format(len(delta), x, z, self.e_dim(x, z)))
        if self.field.is_zero(delta):
            return self.split_triangle(x, z)
        return self._realize(x, z, delta)

    def verify_long_exact(self, t: ETriangle) -> Report:
        """Exactness of (-,Z) -> (-,Y) -> (-,X) -> E(-,Z) -> E(-,Y) -> E(-,X)."""
        c = self._category
        field = self.field
        report = Report('long_exact')
        terms = [yoneda(c, t.z), yoneda(c, t.y), yoneda(c, t.x),
                 self.e_functor(t.z), self.e_functor(t.y), self.e_functor(t.x)]
        maps = [yoneda_map(t.g, terms[0], terms[1]),
                yoneda_map(t.f, terms[1], terms[2]),
                self.delta_sharp(t.x, t.z, t.delta, terms[2], terms[3]),
                self.pushforward_map(t.g, terms[3], terms[4]),
                self.pushforward_map(t.f, terms[4], terms[5])]
        violations = maps[2].naturality_violations()
        report.check('delta_sharp_natural', not violations, {'triangle': t, 'violations': violations[:5]})
        for position, incoming, outgoing, middle in zip(LONG_EXACT_POSITIONS, maps, maps[1:], terms[1:]):
            bad = []
            for w in c.labels:
                composite = field.matmul(outgoing[w], incoming[w])
                rank_in, rank_out = field.rank(incoming[w]), field.rank(outgoing[w])
                if not field.is_zero(composite) or rank_in + rank_out != middle.dims[w]:
                    bad.append({'object': w, 'rank_in': rank_in, 'rank_out': rank_out,
                                'dimension': middle.dims[w]})
            report.check(position, not bad, {'triangle': t, 'objects': bad},
                         detail='exactness at {}'.format(position))
        return report

    def pullback_triangle(self, t: ETriangle, h: BlockMorphism) -> SquareData:
        """Realize h^*δ for h: A -> X with the morphism of triangles into t."""
        c = self._category
        field = self.field
        delta = self.pullback(t.delta, h, t.z)
        new = self.realize(h.source, t.z, delta)
        # y': Y' -> Y with y'∘g' = g and f∘y' = h∘f'
        system = field.vstack([c.precompose_matrix(new.g, t.y), c.postcompose_matrix(t.f, new.y)],
                              cols=c.hom_space_dim(new.y, t.y))
        rhs = np.concatenate([t.g.flat(), c.compose(h, new.f).flat()]).astype(field.dtype)
        solution = field.solve(system, rhs)
        if solution is None:
            raise RealizationError("no morphism of triangles over {}".format(h))
        morphism = c.from_flat(new.y, t.y, solution)
        auxiliary = self.realize(t.x, new.y, self.pushforward(t.delta, new.g, t.x))
        report = Report('pullback')
        report.extend(self.verify_long_exact(new), prefix='triangle')
        report.extend(self.verify_long_exact(auxiliary), prefix='auxiliary')
        expected = h.source + t.y
        report.check('auxiliary_middle', auxiliary.y.same_multiset(expected),
                     {'middle': auxiliary.y, 'expected': expected})
        return SquareData(new, morphism, auxiliary, report)

    def pushout_triangle(self, t: ETriangle, k: BlockMorphism) -> SquareData:
        """Realize k_*δ for k: Z -> C with the morphism of triangles out of t."""
        c = self._category
        field = self.field
        delta = self.pushforward(t.delta, k, t.x)
        new = self.realize(t.x, k.target, delta)
        # y': Y -> Y' with y'∘g = g'∘k and f'∘y' = f
        system = field.vstack([c.precompose_matrix(t.g, new.y), c.postcompose_matrix(new.f, t.y)],
                              cols=c.hom_space_dim(t.y, new.y))
        rhs = np.concatenate([c.compose(new.g, k).flat(), t.f.flat()]).astype(field.dtype)
        solution = field.solve(system, rhs)
        if solution is None:
            raise RealizationError("no morphism of triangles under {}".format(k))
        morphism = c.from_flat(t.y, new.y, solution)
        auxiliary = self.realize(new.y, t.z, self.pullback(t.delta, new.f, t.z))
        report = Report('pushout')
        report.extend(self.verify_long_exact(new), prefix='triangle')
        report.extend(self.verify_long_exact(auxiliary), prefix='auxiliary')
        expected = t.y + k.target
        report.check('auxiliary_middle', auxiliary.y.same_multiset(expected),
                     {'middle': auxiliary.y, 'expected': expected})
        return SquareData(new, morphism, auxiliary, report)

    def extension_vectors(self, dim: int, caps: Caps, rng: np.random.Generator
                          ) -> Tuple[List[np.ndarray], bool]:
        """Nonzero extensions up to scalars: all of them when the space is
        small, otherwise the basis and random samples (flagged)."""
        field = self.field
        if dim == 0:
            return [], True
        if dim <= caps.exhaust_dim:
            return normalized_vectors(field, [dim], rng, caps.enum, caps.samples)
        vectors = [field.unit_vector(dim, k) for k in range(dim)]
        for _ in range(caps.samples):
            v = field.random_vector(dim, rng)
            if not field.is_zero(v):
                vectors.append(field.normalize(v))
        return vectors, False

    def objects(self, caps: Caps, nonzero: bool = False) -> Iterator[FormalObject]:
        """Formal sums with every multiplicity at most ``caps.mult``."""
        labels = self.labels
        for counts in multiplicity_vectors([caps.mult] * len(labels), minimum=1 if nonzero else 0):
            yield FormalObject.from_multiplicities(dict(zip(labels, counts)), labels)

    def deflations_onto(self, x, caps: Caps, rng: np.random.Generator = None
                        ) -> Tuple[List[ETriangle], bool]:
        """Conflations Z -> Y -> X for all Z within caps.

        Scaling δ does not change the deflation up to isomorphism, so one
        extension per line is enough. Split conflations appear once per Z.

        Returns
        -------
        The conflations and whether the enumeration was exhaustive.
        """
        x = self.object(x)
        rng = rng or caps.rng('deflations:{}'.format(x))
        result, exhaustive = [], True
        for z in self.objects(caps):
            result.append(self.split_triangle(x, z))
            vectors, complete = self.extension_vectors(self.e_dim(x, z), caps, rng)
            exhaustive = exhaustive and complete
            for delta in vectors:
                try:
                    result.append(self._realize(x, z, delta))
                except MissingConeData as error:
                    logger.warning("skipping extension of %s by %s: %s", x, z, error)
                    exhaustive = False
        logger.debug("%d conflations onto %s", len(result), x)
        return result, exhaustive

    def conflations(self, caps: Caps, rng: np.random.Generator = None) -> Tuple[List[ETriangle], bool]:
        """Conflations ending in each indecomposable, within caps."""
        result, exhaustive = [], True
        for x in self.labels:
            triangles, complete = self.deflations_onto(x, caps, rng)
            result.extend(triangles)
            exhaustive = exhaustive and complete
        return result, exhaustive

    def classify_structure(self, caps: Caps, triangles: Sequence[ETriangle] = None) -> StructureFlags:
        """Are inflations monic, deflations epic, every morphism a conflation map?"""
        c = self._category
        field = self.field
        flags = StructureFlags()
        if triangles is None:
            triangles, flags.exhaustive = self.conflations(caps)
        for t in triangles:
            if flags.inflations_mono and not yoneda_map(t.g).is_injective():
                flags.inflations_mono = False
                flags.witnesses['inflation'] = t
            if flags.deflations_epi:
                for w in c.labels:
                    m = c.precompose_matrix(t.f, w)
                    if field.rank(m) != m.shape[1]:
                        flags.deflations_epi = False
                        flags.witnesses['deflation'] = t
                        break
        for h in self._test_morphisms():
            try:
                completes = (self.complete_deflation(h) is not None
                             and self.complete_inflation(h) is not None)
            except MissingConeData as error:
                logger.warning("cannot complete %s: %s", h, error)
                flags.exhaustive = False
                continue
            if not completes:
                flags.all_morphisms_conflations = False
                flags.witnesses['morphism'] = h
                break
        logger.info("structure flags: %s", {k: v for k, v in flags.to_json().items() if k != 'witnesses'})
        return flags

    def verify_structure(self, caps: Caps, rng: np.random.Generator = None) -> Report:
        """Biadditivity, additivity of the realization and the long exact sequence."""
        rng = rng or caps.rng('verify_structure')
        report = Report('structure')
        labels = self.labels
        bad = []
        for x, x2, z in itertools.product(labels, repeat=3):
            pair = FormalObject((x, x2))
            direct = self._direct_e_dim(pair, FormalObject((z,)))
            if direct != self.e_dim(pair, z):
                bad.append({'x': pair, 'z': z, 'direct': direct, 'blockwise': self.e_dim(pair, z)})
        report.check('biadditivity', not bad, {'pairs': bad[:5]})
        split = self.realize(labels[0], labels[0], self.field.zero_vector(self.e_dim(labels[0], labels[0])))
        report.check('split_realization', split.y == FormalObject((labels[0], labels[0])), {'triangle': split})
        nonzero = [(x, z) for x in labels for z in labels if self.label_e_dim(x, z)]
        bad, exhaustive = [], True
        for (x, z), (x2, z2) in itertools.islice(itertools.combinations_with_replacement(nonzero, 2),
                                                 caps.samples):
            d1 = self.field.normalize(self._nonzero_vector(self.label_e_dim(x, z), rng))
            d2 = self.field.normalize(self._nonzero_vector(self.label_e_dim(x2, z2), rng))
            try:
                separate = self.realize(x, z, d1).y + self.realize(x2, z2, d2).y
                joint = self.realize(FormalObject((x, x2)), FormalObject((z, z2)),
                                     self.e_direct_sum(x, z, d1, x2, z2, d2)).y
            except MissingConeData:
                exhaustive = False
                continue
            if not joint.same_multiset(separate):
                bad.append({'first': [x, z, d1], 'second': [x2, z2, d2], 'joint': joint, 'separate': separate})
        report.check('additive_realization', not bad, {'pairs': bad[:5]}, exhaustive=False)
        triangles, exhaustive = self.conflations(caps, rng)
        failures = []
        for t in triangles:
            sub = self.verify_long_exact(t)
            if not sub.passed:
                failures.append(sub.failures()[0].witness)
        report.check('long_exact', not failures, {'failures': failures[:5]}, exhaustive=exhaustive,
                     detail='{} conflations'.format(len(triangles)))
        report.data['conflations'] = len(triangles)
        return report

    def info(self) -> dict:
        return {
            'backend': self.tag,
            'objects': list(self.labels),
            'e_dims': {'E({},{})'.format(x, z): self.label_e_dim(x, z)
                       for x in self.labels for z in self.labels if self.label_e_dim(x, z)},
        }

    def __repr__(self) -> str:
        return '{}({})'.format(self.__class__.__name__, ', '.join(self.labels))

    # ------------------- Things to be implemented by subclasses -------------------

    def _e_dim(self, x: str, z: str) -> int:
        """dim E(X, Z) for indecomposables.

        To be implemented by subclasses.
        """
        raise NotImplementedError

    def _pullback_matrix(self, a: str, x: str, z: str, k: int) -> Mat:
        """E(X, Z) -> E(A, Z) induced by the k-th basis morphism A -> X.

        To be implemented by subclasses.
        """
        raise NotImplementedError

    def _pushforward_matrix(self, x: str, z: str, c: str, k: int) -> Mat:
        """E(X, Z) -> E(X, C) induced by the k-th basis morphism Z -> C.

        To be implemented by subclasses.
        """
        raise NotImplementedError

    def _realize(self, x: FormalObject, z: FormalObject, delta: np.ndarray) -> ETriangle:
        """A conflation realizing a nonzero δ.

        To be implemented by subclasses.
        """
        raise NotImplementedError

    def complete_deflation(self, f: BlockMorphism) -> Optional[ETriangle]:
        """A conflation ending in f, or None if f is not a deflation.

        To be implemented by subclasses.
        """
        raise NotImplementedError

    def complete_inflation(self, g: BlockMorphism) -> Optional[ETriangle]:
        """A conflation starting with g, or None if g is not an inflation.

        To be implemented by subclasses.
        """
        raise NotImplementedError

    def _direct_e_dim(self, x: FormalObject, z: FormalObject) -> int:
        """dim E(X, Z) computed without splitting into summands, where the
        backend can; used to check biadditivity."""
        return self.e_dim(x, z)

    # ------------------- private helpers -------------------

    def _columns(self, columns: List[np.ndarray], rows: int) -> Mat:
        if not columns:
            return self.field.zeros(rows, 0)
        return np.stack(columns, axis=1).astype(self.field.dtype)

    def _nonzero_vector(self, n: int, rng: np.random.Generator) -> np.ndarray:
        v = self.field.random_vector(n, rng)
        while self.field.is_zero(v):
            v = self.field.random_vector(n, rng)
        return v

    def _test_morphisms(self) -> Iterator[BlockMorphism]:
        """Basis morphisms between indecomposables and the zero maps to and from 0."""
        c = self._category
        zero = FormalObject.zero()
        for x in c.labels:
            yield c.zero(zero, x)
            yield c.zero(x, zero)
        for x, y in itertools.product(c.labels, repeat=2):
            for k in range(c.hom_dim(x, y)):
                yield c.basis_morphism(x, y, k)
