"""Reflection and coreflection triangles of the heart construction.

The reflection of X is a triangle U'[-1] -> X -α-> X⁺ -> U' with X⁺ in
T⁺, U' in add U and U'[-1] -> X factoring through add U; composition
with α identifies Hom(X⁺, H)/[W] and Hom(X, H)/[W] for H in T⁺.
Dually the coreflection is X⁻ -β-> X -> V'[1] -> X⁻[1] with X⁻ in T⁻,
V' in add V and X -> V'[1] factoring through add V[1].

Both are searched for indecomposables and summed for direct sums.
"""
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple

import logging

from dataclasses import dataclass, field

import numpy as np

from linalg.util import multiplicity_vectors
from category import FormalObject, BlockMorphism, Report
from extri import Caps
from .cotorsion import morphisms, cone_or_none
from .heart import HeartPresentation
from .ideal import in_ideal, is_stable_isomorphism
from .exceptions import ReflectionNotFound

logger = logging.getLogger(__name__)


@dataclass
class ReflectionData:
    """α: X -> X⁺ (or β: X⁻ -> X) with the rest of its triangle.

    Attributes
    ----------
    x
        The object reflected.
    target
        X⁺ for a reflection, X⁻ for a coreflection.
    morphism
        α: X -> X⁺, respectively β: X⁻ -> X.
    cone
        U' for a reflection, V'[1] for a coreflection.
    connecting
        U'[-1] -> X, respectively X -> V'[1].
    """

    x: FormalObject
    target: FormalObject
    morphism: BlockMorphism
    cone: FormalObject
    connecting: BlockMorphism
    coreflection: bool = False
    report: Report = field(default_factory=lambda: Report('reflection'))

    def to_json(self) -> dict:
        return {
            'kind': 'coreflection' if self.coreflection else 'reflection',
            'x': self.x.to_json(),
            'target': self.target.to_json(),
            'morphism': self.morphism.to_json(),
            'cone': self.cone.to_json(),
            'evidence': self.report.to_json(),
        }


class Reflector:
    """Reflections into T⁺ and coreflections into T⁻, cached per indecomposable.

    Parameters
    ----------
    presentation
        The heart of the cotorsion pair.
    caps
        Multiplicity and enumeration bounds of the search.
    """

    def __init__(self, presentation: HeartPresentation, caps: Caps):
        self.presentation = presentation
        self.caps = caps
        self._reflections: Dict[str, ReflectionData] = {}
        self._coreflections: Dict[str, ReflectionData] = {}

    @property
    def structure(self):
        return self.presentation.structure

    # ------------ Public interface ----------------

    def reflection(self, x) -> ReflectionData:
        """The reflection of X into T⁺.

        Raises
        ------
        ReflectionNotFound
            If no candidate passes within the caps.
        """
        x = self.structure.object(x)
        for label in x:
            if label not in self._reflections:
                self._reflections[label] = self._reflect(label)
        return self._sum(x, [self._reflections[label] for label in x], coreflection=False)

    def coreflection(self, x) -> ReflectionData:
        """The coreflection of X into T⁻.

        Raises
        ------
        ReflectionNotFound
            If no candidate passes within the caps.
        """
        x = self.structure.object(x)
        for label in x:
            if label not in self._coreflections:
                self._coreflections[label] = self._coreflect(label)
        return self._sum(x, [self._coreflections[label] for label in x], coreflection=True)

    # ------------------- private helpers -------------------

    def _reflect(self, x: str) -> ReflectionData:
        s, p = self.structure, self.presentation
        allowed = set(p.pair.u)
        obj = FormalObject((x,))

        def accept(alpha: BlockMorphism) -> Optional[ReflectionData]:
            cone = cone_or_none(s, alpha)
            if cone is None or not set(cone[0]) <= allowed:
                return None
            connecting = -s.unshift(cone[2])
            if not in_ideal(connecting, p.pair.u):
                return None
            return ReflectionData(obj, alpha.target, alpha, cone[0], connecting)

        data = self._search(obj, p.t_plus, accept, outgoing=True)
        report = Report('reflection')
        bad = []
        for h in p.t_plus:
            source, target = p.stable_hom(data.target, h), p.stable_hom(obj, h)
            images = [target.reduce(beta @ data.morphism) for beta in source.basis]
            if not _bijective(s.field, images, source.dimension, target.dimension):
                bad.append({'object': h, 'dims': [source.dimension, target.dimension]})
        report.check('adjunction', not bad, {'objects': bad},
                     detail='Hom(X+, H)/[W] -> Hom(X, H)/[W] for H in T+')
        if x in p.t_plus:
            report.check('unit_iso', is_stable_isomorphism(data.morphism, p.w), {'x': x})
        data.report = report
        logger.debug("reflection of %s: %s with cone %s", x, data.target, data.cone)
        return data

    def _coreflect(self, x: str) -> ReflectionData:
        s, p = self.structure, self.presentation
        shifted_v = p.pair.shifted(p.pair.v, 1)
        allowed = set(shifted_v)
        obj = FormalObject((x,))

        def accept(beta: BlockMorphism) -> Optional[ReflectionData]:
            cone = cone_or_none(s, beta)
            if cone is None or not set(cone[0]) <= allowed:
                return None
            if not in_ideal(cone[1], shifted_v):
                return None
            return ReflectionData(obj, beta.source, beta, cone[0], cone[1], coreflection=True)

        data = self._search(obj, p.t_minus, accept, outgoing=False)
        report = Report('coreflection')
        bad = []
        for h in p.t_minus:
            source, target = p.stable_hom(h, data.target), p.stable_hom(h, obj)
            images = [target.reduce(data.morphism @ gamma) for gamma in source.basis]
            if not _bijective(s.field, images, source.dimension, target.dimension):
                bad.append({'object': h, 'dims': [source.dimension, target.dimension]})
        report.check('adjunction', not bad, {'objects': bad},
                     detail='Hom(H, X-)/[W] -> Hom(H, X)/[W] for H in T-')
        if x in p.t_minus:
            report.check('unit_iso', is_stable_isomorphism(data.morphism, p.w), {'x': x})
        data.report = report
        logger.debug("coreflection of %s: %s with cone %s", x, data.target, data.cone)
        return data

    def _search(self, x: FormalObject, allowed: Sequence[str],
                accept: Callable[[BlockMorphism], Optional[ReflectionData]],
                outgoing: bool) -> ReflectionData:
        exhaustive = True
        for candidate, complete in self._candidates(x, allowed, outgoing):
            exhaustive = exhaustive and complete
            data = accept(candidate)
            if data is not None:
                return data
        kind = 'reflection' if outgoing else 'coreflection'
        raise ReflectionNotFound("{} of {} not found within caps (mult={}, enum={}, exhaustive={})"
                                 .format(kind, x, self.caps.mult, self.caps.enum, exhaustive))

    def _candidates(self, x: FormalObject, allowed: Sequence[str],
                    outgoing: bool) -> Iterator[Tuple[BlockMorphism, bool]]:
        s = self.structure
        c = s.category
        rng = self.caps.rng('reflection:{}:{}'.format(x, outgoing))
        if set(x) <= set(allowed):
            yield c.identity(x), True
        labels = list(allowed)
        dims = [c.hom_space_dim(x, h) if outgoing else c.hom_space_dim(h, x) for h in labels]
        bounds = [min(d, self.caps.mult) for d in dims]
        capped = any(d > self.caps.mult for d in dims)
        for counts in multiplicity_vectors(bounds):
            other = FormalObject.from_multiplicities(dict(zip(labels, counts)), labels)
            if outgoing:
                maps, complete = morphisms(s, x, other, self.caps, rng)
            else:
                maps, complete = morphisms(s, other, x, self.caps, rng)
            for f in maps:
                yield f, complete and not capped

    def _sum(self, x: FormalObject, parts, coreflection: bool) -> ReflectionData:
        if len(parts) == 1:
            return parts[0]
        c = self.structure.category
        report = Report('coreflection' if coreflection else 'reflection')
        for part in parts:
            report.extend(part.report, prefix=str(part.x))
        if not parts:
            zero = c.zero(x, x)
            return ReflectionData(x, x, zero, x, zero, coreflection, report)
        morphism = c.direct_sum(*[part.morphism for part in parts])
        connecting = c.direct_sum(*[part.connecting for part in parts])
        target = morphism.source if coreflection else morphism.target
        cone = FormalObject(label for part in parts for label in part.cone)
        return ReflectionData(x, target, morphism, cone, connecting, coreflection, report)


def _bijective(field, images, source_dim: int, target_dim: int) -> bool:
    if source_dim != target_dim:
        return False
    if not images:
        return True
    return field.rank(np.stack(images, axis=1).astype(field.dtype)) == target_dim
