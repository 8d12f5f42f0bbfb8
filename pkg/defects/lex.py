"""Left exact modules and the perpendicular category of def C."""
from typing import Optional, Sequence

import logging

from dataclasses import dataclass

from category import Report
from functors import FpModule, HomSpace, simple, ext_dimension
from extri import ExtriStructure, Caps
from .defect import DeflationIndex

logger = logging.getLogger(__name__)


@dataclass
class Verdict:
    """A yes/no answer with the evidence level and a counterexample."""

    holds: bool
    exhaustive: bool = True
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {'holds': self.holds, 'exhaustive': self.exhaustive, 'witness': self.witness}


def is_left_exact(module: FpModule, structure: ExtriStructure, caps: Caps,
                  deflations: DeflationIndex = None) -> Verdict:
    """Is 0 -> F(X) -> F(Y) -> F(Z) exact for every enumerated conflation?"""
    field = module.field
    deflations = deflations or DeflationIndex(structure, caps)
    triangles, exhaustive = deflations.conflations()
    for t in triangles:
        ff = module.act_morphism(t.f)
        fg = module.act_morphism(t.g)
        dx, dy = module.value_dim(t.x), module.value_dim(t.y)
        rank_f, rank_g = field.rank(ff), field.rank(fg)
        if rank_f != dx or rank_f + rank_g != dy or not field.is_zero(field.matmul(fg, ff)):
            return Verdict(False, exhaustive, {'triangle': t, 'rank_f': rank_f, 'rank_g': rank_g,
                                               'dims': [dx, dy]})
    return Verdict(True, exhaustive)


def perp_test(module: FpModule, sigma: Sequence[str]) -> Verdict:
    """Hom(S_X, F) = 0 and Ext^1(S_X, F) = 0 for every X in Σ."""
    c = module.category
    for x in sigma:
        s = simple(c, x)
        hom = HomSpace(s, module).dimension
        if hom:
            return Verdict(False, witness={'object': x, 'hom': hom})
        ext = ext_dimension(s, module)
        if ext:
            return Verdict(False, witness={'object': x, 'ext': ext})
    return Verdict(True)


def verify_perp_equals_lex(structure: ExtriStructure, sigma: Sequence[str], caps: Caps,
                           modules: Sequence[FpModule], exhaustive: bool = True,
                           deflations: DeflationIndex = None) -> Report:
    """is_left_exact and perp_test agree on the given modules."""
    deflations = deflations or DeflationIndex(structure, caps)
    report = Report('lex_perp')
    bad, lex = [], []
    for m in modules:
        left = is_left_exact(m, structure, caps, deflations)
        exhaustive = exhaustive and left.exhaustive
        perp = perp_test(m, sigma)
        if left.holds:
            lex.append(m)
        if left.holds != perp.holds:
            bad.append({'module': m, 'left_exact': left, 'perp': perp})
    report.check('agree', not bad, {'mismatches': bad[:5]}, exhaustive=exhaustive,
                 detail='{} modules'.format(len(modules)))
    report.data['left_exact'] = [m.to_json() for m in lex]
    logger.info("%d of %d modules are left exact", len(lex), len(modules))
    return report
