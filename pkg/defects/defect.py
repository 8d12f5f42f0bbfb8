"""Defects of conflations and effaceable functors.

The defect of a conflation Z -> Y -f-> X is the cokernel of
(-, f): (-, Y) -> (-, X). A module F is effaceable when every element
of every F(X) is killed by some deflation onto X.
"""
from typing import Dict, List, Optional, Tuple

import logging

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from linalg import Mat, element_vectors
from functors import FpModule, yoneda_map, cokernel, image
from extri import ExtriStructure, ETriangle, Caps

logger = logging.getLogger(__name__)


def defect(t: ETriangle) -> FpModule:
    """coker((-, Y) -> (-, X)) for the conflation t."""
    module, _ = cokernel(yoneda_map(t.f))
    module.name = 'def({})'.format(t.x)
    return module


def defect_image(structure: ExtriStructure, t: ETriangle) -> FpModule:
    """The image of δ♯: (-, X) -> E(-, Z); isomorphic to the defect."""
    module, _ = image(structure.delta_sharp(t.x, t.z, t.delta))
    module.name = 'im({}♯)'.format(t.x)
    return module


class DeflationIndex:
    """Conflations onto each indecomposable, enumerated once per caps."""

    def __init__(self, structure: ExtriStructure, caps: Caps):
        self.structure = structure
        self.caps = caps
        self._onto: Dict[str, Tuple[List[ETriangle], bool]] = {}

    def onto(self, x: str) -> Tuple[List[ETriangle], bool]:
        if x not in self._onto:
            self._onto[x] = self.structure.deflations_onto(x, self.caps)
        return self._onto[x]

    def conflations(self) -> Tuple[List[ETriangle], bool]:
        result, exhaustive = [], True
        for x in self.structure.labels:
            triangles, complete = self.onto(x)
            result.extend(triangles)
            exhaustive = exhaustive and complete
        return result, exhaustive


@dataclass
class Effaceability:
    """Outcome of an effaceability search.

    ``witnesses`` maps each object to the middle terms of the deflations
    used; ``failure`` names an element no enumerated deflation kills.
    """

    effaceable: bool
    exhaustive: bool = True
    witnesses: Dict[str, List[object]] = dataclass_field(default_factory=dict)
    failure: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.effaceable

    def to_json(self) -> dict:
        return {
            'effaceable': self.effaceable,
            'exhaustive': self.exhaustive,
            'witnesses': {x: [str(y) for y in ys] for x, ys in self.witnesses.items()},
            'failure': self.failure,
        }


def is_effaceable(module: FpModule, structure: ExtriStructure, caps: Caps,
                  deflations: DeflationIndex = None) -> Effaceability:
    """Does every x in F(X) die under F(α) for some deflation α: Y -> X?

    When one deflation kills all of F(X) it is a uniform witness.
    Otherwise the elements of F(X) are enumerated (all of them up to
    ``caps.enum`` points, else a basis and ``caps.samples`` random ones,
    flagging the result as non-exhaustive).
    """
    field = module.field
    deflations = deflations or DeflationIndex(structure, caps)
    rng = caps.rng('effaceable:{}'.format(module.name))
    result = Effaceability(True)
    for x in module.support():
        triangles, complete = deflations.onto(x)
        result.exhaustive = result.exhaustive and complete
        kernels = [(t, field.kernel_basis(module.act_morphism(t.f))) for t in triangles]
        uniform = next((t for t, k in kernels if k.shape[1] == module.dims[x]), None)
        if uniform is not None:
            result.witnesses[x] = [uniform.y]
            continue
        elements, complete = element_vectors(field, module.dims[x], rng, caps.enum, caps.samples)
        result.exhaustive = result.exhaustive and complete
        used = []
        for c in range(elements.shape[1]):
            v = elements[:, c]
            if field.is_zero(v):
                continue
            killer = _killing(field, kernels, v)
            if killer is None:
                result.effaceable = False
                result.failure = {'object': x, 'element': field.to_list(v)}
                logger.info("%s is not effaceable: %s at %s survives %d deflations",
                            module, field.to_list(v), x, len(triangles))
                return result
            if killer.y not in used:
                used.append(killer.y)
        result.witnesses[x] = used
    return result


def _killing(field, kernels: List[Tuple[ETriangle, Mat]], v: np.ndarray) -> Optional[ETriangle]:
    for t, k in kernels:
        if k.shape[1] and field.in_span(k, v):
            return t
    return None
