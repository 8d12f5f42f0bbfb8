"""The cohomological functor X |-> (X⁺)⁻ into the heart.

Morphisms are carried along by the lifting properties of the
reflection and coreflection maps, solved modulo the ideal [W].
Exactness in the heart is read through Ψ in mod eAe.
"""
from typing import Dict, Optional, Tuple

import itertools
import logging

from dataclasses import dataclass

from category import FormalObject, BlockMorphism, Report
from category.report import failed
from extri import Caps
from defects import DeflationIndex
from .heart import HeartPresentation
from .ideal import ideal_matrix
from .reflection import Reflector, ReflectionData
from .certify import RestrictedYoneda
from .exceptions import ReflectionNotFound

logger = logging.getLogger(__name__)


@dataclass
class CohomologyData:
    """X with its reflection α: X -> X⁺ and the coreflection β: X^± -> X⁺."""

    x: FormalObject
    plus: ReflectionData
    minus: ReflectionData
    heart_object: FormalObject

    @property
    def value(self) -> FormalObject:
        """X^± = (X⁺)⁻, an object of H."""
        return self.minus.target

    def to_json(self) -> dict:
        return {'x': self.x.to_json(), 'plus': self.plus.target.to_json(),
                'value': self.value.to_json(), 'heart_object': self.heart_object.to_json()}


def cohomology(reflector: Reflector, x) -> CohomologyData:
    """𝕳(X) = τ⁻τ⁺(X) together with the maps realizing it.

    Raises
    ------
    ReflectionNotFound
        If a (co)reflection is not found within the caps.
    """
    x = reflector.structure.object(x)
    plus = reflector.reflection(x)
    minus = reflector.coreflection(plus.target)
    return CohomologyData(x, plus, minus, reflector.presentation.heart_part(minus.target))


def cohomology_map(presentation: HeartPresentation, h: BlockMorphism, source: CohomologyData,
                   target: CohomologyData) -> Optional[Tuple[BlockMorphism, BlockMorphism]]:
    """h⁺: X⁺ -> Y⁺ and h^±: X^± -> Y^± for h: X -> Y.

    h⁺∘α_X = α_Y∘h and β_Y∘h^± = h⁺∘β_X hold modulo [W]; None if either
    system has no solution.
    """
    c = presentation.structure.category
    field = c.field
    w = presentation.w
    alpha_x, alpha_y = source.plus.morphism, target.plus.morphism
    system = field.hstack([c.precompose_matrix(alpha_x, alpha_y.target),
                           ideal_matrix(c, alpha_x.source, alpha_y.target, w)],
                          rows=c.hom_space_dim(alpha_x.source, alpha_y.target))
    solution = field.solve(system, (alpha_y @ h).flat())
    if solution is None:
        return None
    unknowns = c.hom_space_dim(alpha_x.target, alpha_y.target)
    h_plus = c.from_flat(alpha_x.target, alpha_y.target, solution[:unknowns])

    beta_x, beta_y = source.minus.morphism, target.minus.morphism
    system = field.hstack([c.postcompose_matrix(beta_y, beta_x.source),
                           ideal_matrix(c, beta_x.source, beta_y.target, w)],
                          rows=c.hom_space_dim(beta_x.source, beta_y.target))
    solution = field.solve(system, (h_plus @ beta_x).flat())
    if solution is None:
        return None
    unknowns = c.hom_space_dim(beta_x.source, beta_y.source)
    return h_plus, c.from_flat(beta_x.source, beta_y.source, solution[:unknowns])


def verify_cohomology(reflector: Reflector, caps: Caps, psi: RestrictedYoneda = None,
                      deflations: DeflationIndex = None) -> Report:
    """Compare 𝕳 with Ψ⁻¹∘Q∘𝕐 and check that 𝕳 is cohomological.

    Ψ(α⁺) and Ψ(β) must be isomorphisms, the lifted maps must make both
    squares commute after Ψ, and 𝕳 of every enumerated triangle must be
    exact in the middle.
    """
    p = reflector.presentation
    s = p.structure
    field = s.field
    psi = psi or RestrictedYoneda(p.pair)
    report = Report('cohomology')
    try:
        data: Dict[str, CohomologyData] = {x: cohomology(reflector, x) for x in s.labels}
    except ReflectionNotFound as error:
        logger.warning("%s", error)
        report.add(failed('reflections', {'error': str(error)}, exhaustive=False,
                          detail='search failure within caps'))
        return report
    report.data['values'] = {x: d.to_json() for x, d in data.items()}
    for x, d in data.items():
        report.extend(d.plus.report, prefix='{}/reflection'.format(x))
        report.extend(d.minus.report, prefix='{}/coreflection'.format(x))

    bad = [x for x, d in data.items() if not set(d.value) <= set(p.h)]
    report.check('in_heart', not bad, {'objects': bad})

    bad = [x for x, d in data.items()
           if not (psi.map(d.plus.morphism).is_isomorphism() and psi.map(d.minus.morphism).is_isomorphism())]
    report.check('restricted_yoneda', not bad, {'objects': bad},
                 detail='Q(-,X)| = Q(-,X+)| = Q(-,X±)| through α and β')

    c = s.category
    bad = []
    for x, y in itertools.product(s.labels, repeat=2):
        for h in c.hom_basis(x, y):
            lifted = cohomology_map(p, h, data[x], data[y])
            if lifted is None:
                bad.append({'morphism': h, 'problem': 'no lift'})
                continue
            h_plus, h_pm = lifted
            first = psi.map(data[y].plus.morphism @ h).equals(psi.map(h_plus @ data[x].plus.morphism))
            second = psi.map(data[y].minus.morphism @ h_pm).equals(psi.map(h_plus @ data[x].minus.morphism))
            if not (first and second):
                bad.append({'morphism': h, 'reflection_square': first, 'coreflection_square': second})
    report.check('naturality', not bad, {'morphisms': bad[:5]})

    deflations = deflations or DeflationIndex(s, caps)
    triangles, exhaustive = deflations.conflations()
    bad = []
    for t in triangles:
        z, y, x = (cohomology(reflector, obj) for obj in (t.z, t.y, t.x))
        first, second = cohomology_map(p, t.g, z, y), cohomology_map(p, t.f, y, x)
        if first is None or second is None:
            bad.append({'triangle': t, 'problem': 'no lift'})
            continue
        g, f = psi.map(first[1]), psi.map(second[1])
        middle = psi(y.value)
        if not (f @ g).is_zero() or any(field.rank(g[w]) + field.rank(f[w]) != middle.dims[w]
                                         for w in psi.quotient.kept):
            bad.append({'triangle': t, 'problem': 'not exact at the middle'})
    report.check('cohomological', not bad, {'triangles': bad[:5]}, exhaustive=exhaustive,
                 detail='{} triangles'.format(len(triangles)))
    logger.info("cohomology of %s: %s", p.pair, report.statuses())
    return report
