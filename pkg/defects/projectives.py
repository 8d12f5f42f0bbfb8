"""Projective objects and the description of the quotient by restriction to them."""
from typing import Dict, Sequence, Tuple

import itertools
import logging

from category import Report
from category.report import skipped
from functors import FpModule, HomSpace, are_isomorphic, identity_map, image, simple
from extri import ExtriStructure, ETriangle, Caps
from .defect import DeflationIndex
from .lex import Verdict, perp_test
from .quotient import QuotientPresentation, serre_quotient
from .serre import supported_on, indecomposable_modules

logger = logging.getLogger(__name__)

#: checks that need a projective for every object
RES_P_CHECKS = ('quotient_is_mod_p', 'def_vanishes_on_p', 'right_adjoint', 'left_adjoint',
                'torsion_sequence', 'cotorsion_sequence')


def projectives(structure: ExtriStructure) -> Tuple[str, ...]:
    """The objects X with E(X, Z) = 0 for every Z."""
    return tuple(x for x in structure.labels
                 if not any(structure.label_e_dim(x, z) for z in structure.labels))


def enough_projectives(structure: ExtriStructure, caps: Caps,
                       deflations: DeflationIndex = None) -> Tuple[Verdict, Dict[str, ETriangle]]:
    """A conflation C' -> P -> C with P in add P for every indecomposable C."""
    deflations = deflations or DeflationIndex(structure, caps)
    found = set(projectives(structure))
    witnesses, exhaustive = {}, True
    for x in structure.labels:
        triangles, complete = deflations.onto(x)
        exhaustive = exhaustive and complete
        witness = next((t for t in triangles if set(t.y) <= found), None)
        if witness is None:
            logger.warning("no deflation from add%s onto %s within caps", sorted(found), x)
            return Verdict(False, exhaustive, {'object': x, 'projectives': sorted(found)}), witnesses
        witnesses[x] = witness
    return Verdict(True, exhaustive), witnesses


def res_p_check(structure: ExtriStructure, caps: Caps, quotient: QuotientPresentation = None,
                modules: Sequence[FpModule] = None, deflations: DeflationIndex = None) -> Report:
    """With enough projectives: Q is restriction to P, def C is the modules
    vanishing on P, and Q has both adjoints with the expected exact sequences."""
    deflations = deflations or DeflationIndex(structure, caps)
    quotient = quotient or serre_quotient(structure)
    report = Report('res_p')
    found = projectives(structure)
    report.data['projectives'] = list(found)
    verdict, witnesses = enough_projectives(structure, caps, deflations)
    report.check('enough_projectives', verdict.holds, verdict.witness, exhaustive=verdict.exhaustive)
    report.data['deflations'] = {x: t.y.to_json() for x, t in witnesses.items()}
    if not verdict:
        for name in RES_P_CHECKS:
            report.add(skipped(name, 'no enough projectives within caps'))
        return report
    exhaustive = True
    if modules is None:
        modules, exhaustive = indecomposable_modules(structure, caps)

    report.check('quotient_is_mod_p', set(quotient.kept) == set(found),
                 {'kept': list(quotient.kept), 'projectives': list(found)})

    bad = [m for m in modules
           if supported_on(m, quotient.sigma) != all(m.dims[p] == 0 for p in found)]
    report.check('def_vanishes_on_p', not bad, {'modules': bad[:5]}, exhaustive=exhaustive)

    samples = list(itertools.islice(modules, caps.perp_samples))
    bad = []
    for m in samples:
        q = quotient.quotient(m)
        r = quotient.right_adjoint(q)
        if not perp_test(r, quotient.sigma):
            bad.append({'module': m, 'problem': 'R(QF) is not perpendicular to def C'})
            continue
        # εQ ∘ Qη = id and Rε ∘ ηR = id
        first = quotient.counit(q) @ quotient.quotient_map(quotient.unit(m), q)
        if not first.equals(identity_map(q)):
            bad.append({'module': m, 'problem': 'counit after unit is not the identity on QF'})
            continue
        second = quotient.right_adjoint_map(quotient.counit(q)) @ quotient.unit(r)
        if not second.equals(identity_map(r)):
            bad.append({'module': m, 'problem': 'R(counit) after unit is not the identity on RQF'})
    report.check('right_adjoint', not bad, {'modules': bad[:5]}, exhaustive=False,
                 detail='{} modules'.format(len(samples)))

    bad = []
    for m in samples:
        q = quotient.quotient(m)
        if not are_isomorphic(quotient.quotient(quotient.left_adjoint(q)), q):
            bad.append({'module': m})
    report.check('left_adjoint', not bad, {'modules': bad[:5]}, exhaustive=False,
                 detail='QL(N) is isomorphic to N')

    bad = []
    for m in samples:
        tors, _ = quotient.torsion_part(m)
        rest, _ = image(quotient.unit(m))
        if not supported_on(tors, quotient.sigma) or not _without_sigma_socle(rest, quotient.sigma):
            bad.append({'module': m, 'torsion': tors})
    report.check('torsion_sequence', not bad, {'modules': bad[:5]}, exhaustive=False,
                 detail='0 -> tors F -> F -> RQF')

    bad = []
    for m in samples:
        top, _ = quotient.cotorsion_part(m)
        counit = quotient.left_counit(m)
        if not supported_on(top, quotient.sigma) or not quotient.quotient_map(counit).is_isomorphism():
            bad.append({'module': m, 'top': top})
    report.check('cotorsion_sequence', not bad, {'modules': bad[:5]}, exhaustive=False,
                 detail='LQF -> F -> top F -> 0')
    logger.info("restriction to projectives %s: %s", list(found), report.statuses())
    return report


def _without_sigma_socle(module: FpModule, sigma: Sequence[str]) -> bool:
    return not any(HomSpace(simple(module.category, x), module).dimension for x in sigma)
