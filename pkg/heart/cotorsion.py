"""Cotorsion pairs (U, V) of a finite triangulated backend.

Hom(U, V[1]) = 0 and every X sits in a triangle U' -> X -> V'[1] -> U'[1]
with U' in add U and V' in add V. Decomposition triangles are found by
searching f: X -> V'[1] and testing whether cone(f)[-1] lies in add U.
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import itertools
import logging

from dataclasses import dataclass, field

import numpy as np

from linalg.util import multiplicity_vectors, element_vectors
from category import FormalObject, BlockMorphism, Report
from category.report import skipped
from extri import TriangulatedStructure, SubcategoryStructure, Caps, RealizationError
from .exceptions import CotorsionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CotorsionPair:
    """Two sets of indecomposables U and V with W = U ∩ V.

    Raises
    ------
    CotorsionError
        If the backend is not triangulated or a label is unknown.
    """

    structure: TriangulatedStructure
    u: Tuple[str, ...]
    v: Tuple[str, ...]
    evidence: Optional[Report] = field(default=None, repr=False)

    def __post_init__(self):
        if not isinstance(self.structure, TriangulatedStructure):
            raise CotorsionError("cotorsion pairs need a triangulated backend, got {}"
                                 .format(type(self.structure).__name__))
        unknown = [x for x in self.u + self.v if x not in self.structure.labels]
        if unknown:
            raise CotorsionError("unknown objects {} (known: {})".format(unknown, list(self.structure.labels)))
        order = self.structure.labels
        object.__setattr__(self, 'u', tuple(x for x in order if x in self.u))
        object.__setattr__(self, 'v', tuple(x for x in order if x in self.v))

    @property
    def w(self) -> Tuple[str, ...]:
        return tuple(x for x in self.u if x in self.v)

    @property
    def key(self) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
        return self.u, self.v

    def shifted(self, labels: Sequence[str], n: int) -> Tuple[str, ...]:
        """The labels of add(A[n])."""
        result = list(labels)
        for _ in range(abs(n)):
            step = self.structure.shift_label if n > 0 else self.structure.unshift_label
            result = [step(x) for x in result]
        return tuple(x for x in self.structure.labels if x in result)

    def u_structure(self, shift: int = 0) -> SubcategoryStructure:
        """add U[shift] with the restricted structure E(X, Z) = Hom(X, Z[1])."""
        return SubcategoryStructure(self.structure, self.shifted(self.u, shift))

    def to_json(self) -> dict:
        return {'U': list(self.u), 'V': list(self.v), 'W': list(self.w)}

    def __repr__(self) -> str:
        return 'CotorsionPair(U={}, V={})'.format(list(self.u), list(self.v))


@dataclass
class Decomposition:
    """A triangle U' -> X -> V'[1] -> U'[1] given by f: X -> V'[1]."""

    x: FormalObject
    u: FormalObject
    v: FormalObject
    f: BlockMorphism

    def to_json(self) -> dict:
        return {'x': self.x.to_json(), 'u': self.u.to_json(), 'v': self.v.to_json(),
                'f': self.f.to_json()}


def hom_vanishing(structure: TriangulatedStructure, u: Iterable[str], v: Iterable[str]) -> List[List[str]]:
    """The pairs (u, v) with Hom(u, v[1]) != 0."""
    c = structure.category
    return [[a, b] for a, b in itertools.product(u, v) if c.hom_dim(a, structure.shift_label(b))]


def morphisms(structure: TriangulatedStructure, a: FormalObject, b: FormalObject, caps: Caps,
              rng: np.random.Generator) -> Tuple[List[BlockMorphism], bool]:
    """The morphisms A -> B within caps."""
    c = structure.category
    field_ = structure.field
    n = c.hom_space_dim(a, b)
    if n == 0:
        return [c.zero(a, b)], True
    vectors, complete = element_vectors(field_, n, rng, caps.enum, caps.samples)
    return [c.from_flat(a, b, vectors[:, k]) for k in range(vectors.shape[1])], complete


def cone_or_none(structure: TriangulatedStructure, f: BlockMorphism):
    try:
        return structure.cone(f)
    except RealizationError as error:
        logger.warning("no cone for %s: %s", f, error)
        return None


def decompose_object(structure: TriangulatedStructure, x, u: Sequence[str], v: Sequence[str],
                     caps: Caps, rng: np.random.Generator = None) -> Tuple[Optional[Decomposition], bool]:
    """Search a triangle U' -> X -> V'[1] -> U'[1].

    Multiplicities of V' are bounded by dim Hom(X, V_i[1]) and by
    ``caps.mult``.

    Returns
    -------
    The first decomposition found (or None) and whether the search was
    exhaustive.
    """
    c = structure.category
    x = structure.object(x)
    rng = rng or caps.rng('decompose:{}'.format(x))
    v = list(v)
    dims = [c.hom_space_dim(x, structure.shift_label(b)) for b in v]
    bounds = [min(d, caps.mult) for d in dims]
    exhaustive = all(d <= caps.mult for d in dims)
    allowed = set(u)
    for counts in multiplicity_vectors(bounds):
        target = FormalObject.from_multiplicities(dict(zip(v, counts)), v)
        candidates, complete = morphisms(structure, x, structure.shift_object(target), caps, rng)
        exhaustive = exhaustive and complete
        for f in candidates:
            cone = cone_or_none(structure, f)
            if cone is None:
                exhaustive = False
                continue
            shifted_back = structure.unshift_object(cone[0])
            if set(shifted_back) <= allowed:
                return Decomposition(x, shifted_back, target, f), True
    return None, exhaustive


def is_cotorsion_pair(structure: TriangulatedStructure, u: Sequence[str], v: Sequence[str],
                      caps: Caps) -> Report:
    """Hom(U, V[1]) = 0 exactly, and a decomposition triangle for every
    indecomposable within caps."""
    report = Report('cotorsion_pair')
    report.data['pair'] = {'U': list(u), 'V': list(v)}
    bad = hom_vanishing(structure, u, v)
    report.check('hom_vanishing', not bad, {'pairs': bad})
    if bad:
        report.add(skipped('decompositions', 'Hom(U, V[1]) does not vanish'))
        return report
    witnesses: Dict[str, Decomposition] = {}
    missing, exhaustive = [], True
    for x in structure.labels:
        found, complete = decompose_object(structure, x, u, v, caps)
        if found is None:
            missing.append(x)
            exhaustive = exhaustive and complete
        else:
            witnesses[x] = found
    detail = '' if exhaustive else 'no decomposition within caps'
    report.check('decompositions', not missing, {'objects': missing}, detail=detail, exhaustive=exhaustive)
    report.data['decompositions'] = witnesses
    return report


def perpendicular_v(structure: TriangulatedStructure, u: Iterable[str]) -> Tuple[str, ...]:
    """{X : Hom(u, X[1]) = 0 for all u in U}."""
    u = list(u)
    c = structure.category
    return tuple(x for x in structure.labels
                 if not any(c.hom_dim(a, structure.shift_label(x)) for a in u))


def enumerate_cotorsion_pairs(structure: TriangulatedStructure, caps: Caps) -> List[CotorsionPair]:
    """Every U with V = {X : Hom(U, X[1]) = 0} that passes :py:func:`is_cotorsion_pair`.

    Raises
    ------
    CotorsionError
        If there are more than ``caps.max_objects`` indecomposables.
    """
    labels = structure.labels
    if len(labels) > caps.max_objects:
        raise CotorsionError("{} indecomposables exceed max_objects={}; raise the cap to enumerate 2^{} subsets"
                             .format(len(labels), caps.max_objects, len(labels)))
    pairs, seen = [], set()
    for size in range(len(labels) + 1):
        for u in itertools.combinations(labels, size):
            v = perpendicular_v(structure, u)
            if (u, v) in seen:
                continue
            seen.add((u, v))
            report = is_cotorsion_pair(structure, u, v, caps)
            if report.passed:
                pairs.append(CotorsionPair(structure, u, v, evidence=report))
            else:
                logger.debug("U=%s, V=%s rejected: %s", list(u), list(v), report.statuses())
    logger.info("%d cotorsion pairs among %d candidates", len(pairs), 2 ** len(labels))
    return pairs


def star(structure: TriangulatedStructure, a: Sequence[str], b: Sequence[str], caps: Caps,
         rng: np.random.Generator = None) -> Tuple[Tuple[str, ...], bool]:
    """The indecomposable summands of objects X in triangles A' -> X -> B' -> A'[1].

    X is cone(h)[-1] for the connecting morphism h: B' -> A'[1].

    Returns
    -------
    The labels (in backend order) and whether the search was exhaustive.
    """
    rng = rng or caps.rng('star')
    a, b = list(a), list(b)
    found, exhaustive = set(), True
    for counts in multiplicity_vectors([caps.mult] * (len(a) + len(b)), minimum=1):
        first = FormalObject.from_multiplicities(dict(zip(a, counts[:len(a)])), a)
        second = FormalObject.from_multiplicities(dict(zip(b, counts[len(a):])), b)
        candidates, complete = morphisms(structure, second, structure.shift_object(first), caps, rng)
        exhaustive = exhaustive and complete
        for h in candidates:
            cone = cone_or_none(structure, h)
            if cone is None:
                exhaustive = False
                continue
            found.update(structure.unshift_object(cone[0]))
    result = tuple(x for x in structure.labels if x in found)
    logger.debug("%s * %s = %s", a, b, list(result))
    return result, exhaustive
