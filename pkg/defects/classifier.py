"""When is E_C = Q∘Y an exact embedding, or an equivalence onto mod eAe?"""
from typing import Optional

import itertools
import logging

from dataclasses import dataclass

import numpy as np

from category import Report
from category.report import skipped
from functors import HomSpace, are_isomorphic, enumerate_indecomposables
from extri import ExtriStructure, StructureFlags, Caps
from .defect import DeflationIndex
from .quotient import QuotientPresentation, serre_quotient

logger = logging.getLogger(__name__)


@dataclass
class Classification:
    """E_C is exact and fully faithful, and possibly also dense."""

    is_exact_embedding: bool
    is_abelian_equivalence: bool
    report: Report

    def to_json(self) -> dict:
        return {
            'is_exact_embedding': self.is_exact_embedding,
            'is_abelian_equivalence': self.is_abelian_equivalence,
            'evidence': self.report.to_json(),
        }


def theorem_a_classifier(structure: ExtriStructure, caps: Caps,
                         quotient: QuotientPresentation = None,
                         deflations: DeflationIndex = None,
                         flags: Optional[StructureFlags] = None) -> Classification:
    """Check that E_C is exact, fully faithful and dense.

    E_C is an exact embedding exactly when C is exact, and an
    equivalence exactly when C is abelian; the structure flags are
    compared against the first answer.
    """
    c = structure.category
    field = structure.field
    quotient = quotient or serre_quotient(structure)
    deflations = deflations or DeflationIndex(structure, caps)
    report = Report('theorem_a')

    triangles, exhaustive = deflations.conflations()
    bad = []
    for t in triangles:
        g, f = quotient.e_functor_map(t.g), quotient.e_functor_map(t.f)
        if not (g.is_injective() and f.is_surjective()):
            bad.append({'triangle': t, 'injective': g.is_injective(), 'surjective': f.is_surjective()})
            continue
        middle = quotient.e_functor(t.y)
        if any(field.rank(g[w]) + field.rank(f[w]) != middle.dims[w] for w in quotient.kept):
            bad.append({'triangle': t, 'middle': 'not exact'})
    exact = not bad
    report.check('exact', exact, {'conflations': bad[:5]}, exhaustive=exhaustive,
                 detail='{} conflations'.format(len(triangles)))

    bad = []
    for x, y in itertools.product(structure.labels, repeat=2):
        hom = HomSpace(quotient.e_functor(x), quotient.e_functor(y))
        basis = c.hom_basis(x, y)
        columns = [hom.coordinates(quotient.e_functor_map(f)) for f in basis]
        rank = field.rank(np.stack(columns, axis=1).astype(field.dtype)) if columns else 0
        if rank != len(basis) or hom.dimension != len(basis):
            bad.append({'pair': [x, y], 'hom': len(basis), 'image_hom': hom.dimension, 'rank': rank})
    faithful = not bad
    report.check('fully_faithful', faithful, {'pairs': bad[:5]})

    dense = False
    if exact and faithful:
        images = [quotient.e_functor(x) for x in structure.labels]
        bound = max([m.total_dim for m in images] + [0]) + 2
        report.data['density_bound'] = bound
        modules, complete = enumerate_indecomposables(quotient.subcategory, bound, rng=caps.rng('dense'),
                                                      limit=caps.enum, samples=caps.samples)
        missing = [m for m in modules if not any(are_isomorphic(m, e) for e in images)]
        dense = not missing
        report.check('dense', dense, {'modules': missing[:5]}, exhaustive=complete,
                     detail='{} indecomposable eAe-modules of dimension at most {}'.format(len(modules), bound))
    else:
        report.add(skipped('dense', 'E_C is not an exact embedding'))

    flags = flags or structure.classify_structure(caps, triangles)
    report.check('consistency', flags.exact == (exact and faithful),
                 {'flags': flags, 'exact_embedding': exact and faithful})
    report.data['flags'] = flags.to_json()
    result = Classification(exact and faithful, exact and faithful and dense, report)
    logger.info("E_C exact embedding: %s, equivalence: %s", result.is_exact_embedding,
                result.is_abelian_equivalence)
    return result
