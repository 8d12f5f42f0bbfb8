"""The Serre subcategory def C of mod C and its closure checks.

def C consists of the modules whose composition factors are simples
S_X with X in Σ, where Σ holds the objects X with E(X, Z) != 0 for some
indecomposable Z. Since dim F(X) counts the factors S_X of F, a module
lies in def C exactly when it vanishes outside Σ.
"""
from typing import Iterable, List, Sequence, Tuple

import itertools
import logging

import numpy as np

from category import Report
from functors import (FpModule, HomSpace, ExtData, simple, kernel, image, cokernel, are_isomorphic,
                      enumerate_indecomposables)
from extri import ExtriStructure, Caps
from .defect import DeflationIndex, defect, is_effaceable

logger = logging.getLogger(__name__)


def def_simples(structure: ExtriStructure) -> Tuple[str, ...]:
    """The objects X with E(X, Z) != 0 for some indecomposable Z."""
    return tuple(x for x in structure.labels
                 if any(structure.label_e_dim(x, z) for z in structure.labels))


def supported_on(module: FpModule, sigma: Iterable[str]) -> bool:
    return set(module.support()) <= set(sigma)


def indecomposable_modules(structure: ExtriStructure, caps: Caps) -> Tuple[List[FpModule], bool]:
    """Indecomposable C-modules up to ``caps.module_dim``."""
    return enumerate_indecomposables(structure.category, caps.module_dim, rng=caps.rng('modules'),
                                     limit=caps.enum, samples=caps.samples)


def random_maps(source: FpModule, target: FpModule, count: int, rng: np.random.Generator):
    """The basis of Hom(M, N) followed by random combinations."""
    hom = HomSpace(source, target)
    if not hom.dimension:
        return []
    maps = list(hom.basis)
    field = hom.field
    maps.extend(hom.element(field.random_vector(hom.dimension, rng)) for _ in range(count))
    return maps


def verify_serre(structure: ExtriStructure, sigma: Sequence[str], caps: Caps,
                 modules: Sequence[FpModule] = None, deflations: DeflationIndex = None) -> Report:
    """Check that the Σ-supported modules form the Serre subcategory of
    effaceable functors and that defects are closed under kernels and
    cokernels."""
    c = structure.category
    field = structure.field
    sigma = tuple(sigma)
    deflations = deflations or DeflationIndex(structure, caps)
    rng = caps.rng('verify_serre')
    report = Report('serre')
    report.data['sigma'] = list(sigma)
    exhaustive = True
    if modules is None:
        modules, exhaustive = indecomposable_modules(structure, caps)

    bad, complete = [], True
    for x in structure.labels:
        result = is_effaceable(simple(c, x), structure, caps, deflations)
        complete = complete and result.exhaustive
        if bool(result) != (x in sigma):
            bad.append({'object': x, 'in_sigma': x in sigma, 'effaceable': result})
    report.check('simples', not bad, {'mismatches': bad}, exhaustive=complete,
                 detail='Σ agrees with effaceability of the simple functors')

    inside = [m for m in modules if supported_on(m, sigma)]
    bad, complete = [], exhaustive
    for m in inside:
        result = is_effaceable(m, structure, caps, deflations)
        complete = complete and result.exhaustive
        if not result:
            bad.append({'module': m, 'effaceable': result})
    report.check('members', not bad, {'modules': bad[:5]}, exhaustive=complete,
                 detail='Σ-supported indecomposables are effaceable')

    subs, quotients = [], []
    per_pair = max(1, caps.random_maps // max(1, len(inside) ** 2))
    for m, n in itertools.product(inside, repeat=2):
        for alpha in random_maps(m, n, per_pair, rng):
            for part in (kernel(alpha)[0], image(alpha)[0]):
                result = is_effaceable(part, structure, caps, deflations)
                if not result:
                    subs.append({'source': m, 'target': n, 'submodule': part, 'effaceable': result})
            quotient = cokernel(alpha)[0]
            result = is_effaceable(quotient, structure, caps, deflations)
            if not result:
                quotients.append({'source': m, 'target': n, 'quotient': quotient, 'effaceable': result})
    report.check('submodules', not subs, {'modules': subs[:5]}, exhaustive=False,
                 detail='{} Σ-supported indecomposables'.format(len(inside)))
    report.check('quotients', not quotients, {'modules': quotients[:5]}, exhaustive=False)

    bad, complete = [], exhaustive
    for m, n in itertools.product(inside, repeat=2):
        ext = ExtData(m, n)
        for k in range(ext.dimension):
            middle, _, _ = ext.realize(field.unit_vector(ext.dimension, k))
            result = is_effaceable(middle, structure, caps, deflations)
            complete = complete and result.exhaustive
            if not result or not supported_on(middle, sigma):
                bad.append({'sub': n, 'quotient': m, 'class': k, 'middle': middle, 'effaceable': result})
    report.check('extensions', not bad, {'extensions': bad[:5]}, exhaustive=complete)

    triangles, _ = deflations.conflations()
    defects = []
    for t in triangles:
        d = defect(t)
        if not d.is_zero() and not any(are_isomorphic(d, e) for e in defects):
            defects.append(d)
    bad = [{'defect': d} for d in defects if not supported_on(d, sigma)]
    for m, n in itertools.product(defects, repeat=2):
        for alpha in random_maps(m, n, 1, rng):
            for part in (kernel(alpha)[0], cokernel(alpha)[0]):
                if not supported_on(part, sigma):
                    bad.append({'source': m, 'target': n, 'module': part})
    report.check('defect_kernels_cokernels', not bad, {'maps': bad[:5]}, exhaustive=False,
                 detail='{} distinct defects'.format(len(defects)))
    logger.info("Serre checks for Σ=%s: %s", list(sigma), report.statuses())
    return report


def verify_eff_equals_def(structure: ExtriStructure, sigma: Sequence[str], caps: Caps,
                          modules: Sequence[FpModule] = None,
                          deflations: DeflationIndex = None) -> Report:
    """is_effaceable(F) iff F is Σ-supported, on indecomposables.

    Both sides are closed under finite sums and summands, so the
    indecomposables decide every module of bounded dimension.
    """
    deflations = deflations or DeflationIndex(structure, caps)
    report = Report('eff_def')
    exhaustive = True
    if modules is None:
        modules, exhaustive = indecomposable_modules(structure, caps)
    bad = []
    for m in modules:
        result = is_effaceable(m, structure, caps, deflations)
        exhaustive = exhaustive and result.exhaustive
        if bool(result) != supported_on(m, sigma):
            bad.append({'module': m, 'dims': m.dims, 'effaceable': result})
    report.check('indecomposables', not bad, {'mismatches': bad[:5]}, exhaustive=exhaustive,
                 detail='{} modules of total dimension at most {}'.format(len(modules), caps.module_dim))
    report.data['modules'] = len(modules)
    return report
