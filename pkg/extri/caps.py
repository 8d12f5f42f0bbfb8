"""Search and enumeration bounds shared by all checks."""
from typing import Mapping

import zlib

from dataclasses import dataclass, fields, replace, asdict

import numpy as np

from .exceptions import StructureError


@dataclass(frozen=True)
class Caps:
    """Bounds on the enumerations behind every certificate.

    Attributes
    ----------
    mult
        Largest multiplicity of an indecomposable in enumerated objects.
    exhaust_dim
        E-spaces (and hom spaces searched for morphisms) up to this
        dimension are enumerated completely over a finite field.
    enum
        Largest number of points of a vector space enumerated exhaustively.
    samples
        Number of random points tried beyond these bounds.
    module_dim
        Bound on the total dimension of enumerated modules.
    seed
        Seed of every random choice.
    max_objects
        Largest number of indecomposables for subset enumerations.
    random_maps
        Number of random module maps used by closure checks.
    perp_samples
        Number of random modules used by sampled adjunction checks.
    """

    mult: int = 2
    exhaust_dim: int = 2
    enum: int = 10000
    samples: int = 100
    module_dim: int = 4
    seed: int = 0
    max_objects: int = 12
    random_maps: int = 50
    perp_samples: int = 20

    @classmethod
    def parse(cls, text: str, base: 'Caps' = None) -> 'Caps':
        """Override caps from a ``key=value,key=value`` string."""
        base = base or cls()
        if not text:
            return base
        updates = {}
        for item in text.split(','):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition('=')
            if not sep:
                raise StructureError("caps entry {!r} is not key=value".format(item))
            updates[key.strip()] = value
        return base.updated(updates)

    def updated(self, values: Mapping[str, object]) -> 'Caps':
        known = {f.name for f in fields(self)}
        updates = {}
        for key, value in values.items():
            if key not in known:
                raise StructureError("unknown cap {!r} (known: {})".format(key, ', '.join(sorted(known))))
            try:
                updates[key] = int(value)
            except (TypeError, ValueError):
                raise StructureError("cap {} must be an integer, got {!r}".format(key, value))
            if updates[key] < 0:
                raise StructureError("cap {} must not be negative".format(key))
        return replace(self, **updates)

    def rng(self, name: str = '') -> np.random.Generator:
        """A generator seeded from the global seed and a stable name."""
        return np.random.default_rng([self.seed, zlib.crc32(name.encode('utf-8'))])

    def to_json(self) -> dict:
        return asdict(self)
