"""The heart of a cotorsion pair: H = T⁺ ∩ T⁻ modulo the ideal [W].

T⁺ = W * V[1] and T⁻ = U[-1] * W, where A * B collects the middle
terms of triangles A' -> X -> B' -> A'[1].
"""
from typing import Dict, Mapping, Tuple

import logging

from dataclasses import dataclass, field, replace

from category import FiniteLinearCategory, FormalObject
from extri import TriangulatedStructure, Caps
from .cotorsion import CotorsionPair, star
from .ideal import StableHom, stable_category

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class HeartPresentation:
    """The object sets T⁺, T⁻ and H with the stable category H/[W].

    ``hom_dims`` is the table certified against lex U[-1]; it starts as
    the dimensions of `category` and may be replaced to build negative
    controls.
    """

    pair: CotorsionPair
    t_plus: Tuple[str, ...]
    t_minus: Tuple[str, ...]
    h: Tuple[str, ...]
    category: FiniteLinearCategory
    spaces: Dict[Tuple[str, str], StableHom]
    hom_dims: Dict[Tuple[str, str], int]
    exhaustive: bool = True
    _stable: Dict[Tuple[FormalObject, FormalObject], StableHom] = field(default_factory=dict, repr=False)

    @property
    def structure(self) -> TriangulatedStructure:
        return self.pair.structure

    @property
    def w(self) -> Tuple[str, ...]:
        return self.pair.w

    @property
    def objects(self) -> Tuple[str, ...]:
        """The indecomposables of H outside W, i.e. those of the heart."""
        return self.category.labels

    @property
    def is_zero(self) -> bool:
        return not self.objects

    def stable_hom(self, a, b) -> StableHom:
        """Hom(A, B)/[W] in the backend."""
        c = self.structure.category
        key = (c.object(a), c.object(b))
        if key not in self._stable:
            self._stable[key] = StableHom(c, key[0], key[1], self.w)
        return self._stable[key]

    def heart_part(self, a) -> FormalObject:
        """The summands of A that survive in the heart."""
        return FormalObject(x for x in self.structure.object(a) if x not in self.w)

    def with_hom_dims(self, updates: Mapping[Tuple[str, str], int]) -> 'HeartPresentation':
        hom_dims = dict(self.hom_dims)
        hom_dims.update(updates)
        return replace(self, hom_dims=hom_dims, _stable={})

    def to_json(self) -> dict:
        return {
            'pair': self.pair.to_json(),
            'T+': list(self.t_plus),
            'T-': list(self.t_minus),
            'H': list(self.h),
            'objects': list(self.objects),
            'hom_dims': {'{}->{}'.format(x, y): d for (x, y), d in sorted(self.hom_dims.items())},
            'exhaustive': self.exhaustive,
        }


def heart_presentation(pair: CotorsionPair, caps: Caps) -> HeartPresentation:
    """Compute T⁺, T⁻, H and the [W]-quotient hom spaces of the heart."""
    s = pair.structure
    t_plus, plus_complete = star(s, pair.w, pair.shifted(pair.v, 1), caps, caps.rng('T+'))
    t_minus, minus_complete = star(s, pair.shifted(pair.u, -1), pair.w, caps, caps.rng('T-'))
    h = tuple(x for x in t_plus if x in t_minus)
    objects = [x for x in h if x not in pair.w]
    category, spaces = stable_category(s.category, objects, pair.w)
    hom_dims = {key: space.dimension for key, space in spaces.items()}
    exhaustive = plus_complete and minus_complete
    if not exhaustive:
        logger.warning("T+ or T- of %s was searched within caps only", pair)
    logger.info("heart of %s: T+=%s, T-=%s, H=%s, heart objects %s", pair, list(t_plus), list(t_minus),
                list(h), objects)
    return HeartPresentation(pair, t_plus, t_minus, h, category, spaces, hom_dims, exhaustive)
