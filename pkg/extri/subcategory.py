"""Extension-closed full subcategories with the restricted structure."""
from typing import Iterable, Optional

import itertools
import logging

import numpy as np

from linalg import Mat
from category import FormalObject, BlockMorphism, Report
from .structure import ExtriStructure
from .triangle import ETriangle
from .caps import Caps
from .exceptions import NotExtensionClosed

logger = logging.getLogger(__name__)


class SubcategoryStructure(ExtriStructure):
    """The full subcategory of a parent structure on some indecomposables.

    E and the realization are those of the parent; a realization whose
    middle term leaves the subcategory raises :py:class:`NotExtensionClosed`.
    """

    tag = 'subcategory'

    def __init__(self, parent: ExtriStructure, labels: Iterable[str]):
        labels = list(labels)
        super().__init__(parent.category.full_subcategory(labels))
        self.parent = parent

    # ------------ Public interface ----------------

    def complete_deflation(self, f: BlockMorphism) -> Optional[ETriangle]:
        t = self.parent.complete_deflation(self.parent.category.adopt(f))
        if t is None or not self._inside(t.z):
            return None
        return self._adopt(t)

    def complete_inflation(self, g: BlockMorphism) -> Optional[ETriangle]:
        t = self.parent.complete_inflation(self.parent.category.adopt(g))
        if t is None or not self._inside(t.x):
            return None
        return self._adopt(t)

    def verify_extension_closed(self, caps: Caps, rng: np.random.Generator = None) -> Report:
        """Realize extensions between indecomposables and look at the middle terms."""
        rng = rng or caps.rng('extension_closed')
        report = Report('extension_closed')
        bad, exhaustive = [], True
        for x, z in itertools.product(self.labels, repeat=2):
            vectors, complete = self.extension_vectors(self.label_e_dim(x, z), caps, rng)
            exhaustive = exhaustive and complete
            for delta in vectors:
                middle = self.parent.realize(x, z, delta).y
                if not self._inside(middle):
                    bad.append({'x': x, 'z': z, 'delta': delta, 'middle': middle})
        report.check('middle_terms', not bad, {'extensions': bad[:5]}, exhaustive=exhaustive)
        return report

    def verify_structure(self, caps: Caps, rng: np.random.Generator = None) -> Report:
        closed = self.verify_extension_closed(caps, rng)
        if not closed.passed:
            return closed
        report = super().verify_structure(caps, rng)
        report.extend(closed)
        return report

    def info(self) -> dict:
        info = super().info()
        info['parent'] = self.parent.info()
        return info

    # ------------------- hooks -------------------

    def _e_dim(self, x: str, z: str) -> int:
        return self.parent.label_e_dim(x, z)

    def _pullback_matrix(self, a: str, x: str, z: str, k: int) -> Mat:
        return self.parent.pullback_tensor(a, x, z)[k]

    def _pushforward_matrix(self, x: str, z: str, c: str, k: int) -> Mat:
        return self.parent.pushforward_tensor(x, z, c)[k]

    def _realize(self, x: FormalObject, z: FormalObject, delta: np.ndarray) -> ETriangle:
        t = self.parent.realize(x, z, delta)
        if not self._inside(t.y):
            raise NotExtensionClosed("extension {} of {} by {} has middle term {} outside {}"
                                     .format(self.field.to_list(delta), x, z, t.y, list(self.labels)))
        return self._adopt(t)

    def _direct_e_dim(self, x: FormalObject, z: FormalObject) -> int:
        return self.parent._direct_e_dim(x, z)

    # ------------------- private helpers -------------------

    def _inside(self, a: FormalObject) -> bool:
        return all(label in self.category for label in a)

    def _adopt(self, t: ETriangle) -> ETriangle:
        c = self.category
        return ETriangle(self, t.z, t.y, t.x, c.adopt(t.g), c.adopt(t.f), t.delta)
