from dataclasses import dataclass

import numpy as np

from category import FormalObject, BlockMorphism
from .exceptions import RealizationError


@dataclass(frozen=True, eq=False)
class ETriangle:
    """A conflation Z -g-> Y -f-> X realizing δ in E(X, Z).

    ``delta`` holds flat coordinates of E(X, Z) in the layout of the
    owning structure (one block per pair of summands, target-major).
    """

    structure: object
    z: FormalObject
    y: FormalObject
    x: FormalObject
    g: BlockMorphism
    f: BlockMorphism
    delta: np.ndarray

    def __post_init__(self):
        if self.g.source != self.z or self.g.target != self.y:
            raise RealizationError("inflation {} does not go {} -> {}".format(self.g, self.z, self.y))
        if self.f.source != self.y or self.f.target != self.x:
            raise RealizationError("deflation {} does not go {} -> {}".format(self.f, self.y, self.x))
        if not (self.f @ self.g).is_zero():
            raise RealizationError("composite of {} and {} is not zero".format(self.f, self.g))
        expected = self.structure.e_dim(self.x, self.z)
        if len(self.delta) != expected:
            raise RealizationError("extension has {} coordinates, E({}, {}) has dimension {}"
                                   .format(len(self.delta), self.x, self.z, expected))

    def is_split(self) -> bool:
        return self.structure.field.is_zero(self.delta)

    def with_delta(self, delta: np.ndarray) -> 'ETriangle':
        """The same maps with another extension (used for negative controls)."""
        return ETriangle(self.structure, self.z, self.y, self.x, self.g, self.f,
                         self.structure.field.asarray(np.asarray(delta)))

    def __repr__(self) -> str:
        return '{} -> {} -> {} ({})'.format(self.z, self.y, self.x,
                                            self.structure.field.to_list(self.delta))

    def to_json(self) -> dict:
        field = self.structure.field
        return {
            'z': self.z.to_json(), 'y': self.y.to_json(), 'x': self.x.to_json(),
            'g': self.g.to_json(), 'f': self.f.to_json(),
            'delta': field.to_list(self.delta),
        }
