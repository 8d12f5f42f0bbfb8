"""Approximating a U-module by a defect and a left exact functor.

For F with presentation (-, U1) -d-> (-, U0) -> F -> 0 over a cotorsion
class U, complete d to a triangle K -> U1 -> U0 -> K[1], decompose
U2 -> K -> V2[1] -> U2[1], and map F to G = (-, V2[2])|_U through
U0 -> K[1] -> V2[2]. The kernel S is a defect and G is left exact.
Without a cotorsion pair the unit F -> RQF of the quotient is used.
"""
from typing import Dict, Sequence

import logging

from dataclasses import dataclass

from category import FormalObject, Report
from functors import FpModule, ModuleMap, yoneda, kernel, projective_presentation, relation_morphism
from extri import ExtriStructure, Caps
from defects import serre_quotient, supported_on, perp_test, def_simples
from .cotorsion import CotorsionPair, decompose_object
from .exceptions import SearchExhausted, CotorsionError

logger = logging.getLogger(__name__)


@dataclass
class Approximation:
    """S -φ-> F -ψ-> G with S a defect and G perpendicular to the defects."""

    module: FpModule
    s: FpModule
    phi: ModuleMap
    g: FpModule
    psi: ModuleMap
    method: str

    def check(self, sigma: Sequence[str]) -> Report:
        """S in def, G in (def)^⊥, and im φ = ker ψ."""
        field = self.module.field
        report = Report('lex_approximation')
        report.data['method'] = self.method
        report.check('defect', supported_on(self.s, sigma), {'support': self.s.support(), 'sigma': list(sigma)})
        verdict = perp_test(self.g, sigma)
        report.check('perpendicular', verdict.holds, verdict.witness)
        bad = []
        composite = self.psi @ self.phi
        for x in self.module.category.labels:
            rank_phi, rank_psi = field.rank(self.phi[x]), field.rank(self.psi[x])
            if (rank_phi != self.s.dims[x] or rank_phi + rank_psi != self.module.dims[x]
                    or not field.is_zero(composite[x])):
                bad.append({'object': x, 'rank_phi': rank_phi, 'rank_psi': rank_psi})
        report.check('exact', not bad, {'objects': bad})
        return report

    def to_json(self) -> dict:
        return {'method': self.method, 'F': self.module.to_json(), 'S': self.s.to_json(),
                'G': self.g.to_json()}


def lex_approximation(module: FpModule, structure: ExtriStructure, caps: Caps,
                      pair: CotorsionPair = None) -> Approximation:
    """Approximate F over `structure` (add U when `pair` is given).

    Raises
    ------
    SearchExhausted
        If the cotorsion decomposition of K is not found within caps.
    """
    if pair is not None:
        return _triangle_approximation(module, pair, caps)
    quotient = serre_quotient(structure)
    unit = quotient.unit(module)
    s, phi = kernel(unit)
    s.name = 'S({})'.format(module.name or 'F')
    return Approximation(module, s, phi, unit.target, unit, 'unit')


def check_restricted_representables(pair: CotorsionPair) -> Report:
    """(-, V[2])|_U lies in (def U)^⊥ and (-, U[1])|_U in def U."""
    domain = pair.u_structure()
    sigma = def_simples(domain)
    c = pair.structure.category
    report = Report('restricted_representables')
    report.data['sigma'] = list(sigma)
    bad = []
    for v in pair.v:
        target = pair.shifted([v], 2)[0]
        verdict = perp_test(yoneda(c, target).restrict(domain.labels, domain.category), sigma)
        if not verdict:
            bad.append({'object': v, 'witness': verdict.witness})
    report.check('v_perpendicular', not bad, {'objects': bad}, detail='(-, V[2])|U in (def U)^⊥')
    bad = []
    for u in pair.u:
        target = pair.shifted([u], 1)[0]
        module = yoneda(c, target).restrict(domain.labels, domain.category)
        if not supported_on(module, sigma):
            bad.append({'object': u, 'support': module.support()})
    report.check('u_defect', not bad, {'objects': bad}, detail='(-, U[1])|U in def U')
    return report


def _triangle_approximation(module: FpModule, pair: CotorsionPair, caps: Caps) -> Approximation:
    s = pair.structure
    c = s.category
    field = s.field
    unknown = [x for x in module.category.labels if x not in pair.u]
    if unknown:
        raise CotorsionError("module lives on {}, outside U={}".format(unknown, list(pair.u)))
    top = projective_presentation(module)
    d = c.adopt(relation_morphism(top))
    cone, u, _ = s.cone(d)
    k = s.unshift_object(cone)
    parts = []
    for label in k:
        found, exhaustive = decompose_object(s, label, pair.u, pair.v, caps)
        if found is None:
            raise SearchExhausted("no decomposition of {} within caps (exhaustive={})".format(label, exhaustive))
        parts.append(found)
    if parts:
        decomposition = c.direct_sum(*[part.f for part in parts])
    else:
        decomposition = c.zero(FormalObject.zero(), FormalObject.zero())
    v2 = FormalObject(label for part in parts for label in part.v)
    connecting = s.shift(decomposition) @ u
    g = yoneda(c, connecting.target).restrict(module.category.labels, module.category)
    g.name = '(-,{})|'.format(s.shift_object(s.shift_object(v2)))
    components: Dict[str, object] = {}
    for w in module.category.labels:
        on_cover = c.postcompose_matrix(connecting, FormalObject((w,)))
        factor = field.solve_factorization(on_cover.T.copy(), top.epi[w].T.copy())
        if factor is None:
            raise CotorsionError("U0 -> V2[2] does not factor through F at {}".format(w))
        components[w] = factor.T.copy()
    psi = ModuleMap(module, g, components)
    sub, phi = kernel(psi)
    sub.name = 'S({})'.format(module.name or 'F')
    logger.debug("approximation of %s: K=%s, V2=%s", module, k, v2)
    return Approximation(module, sub, phi, g, psi, 'triangle')
