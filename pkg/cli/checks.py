"""The check suites behind the commands.

Each suite takes loaded structures and returns one :py:class:`Report`;
mathematical failures and exhausted searches become FAIL results with
witnesses, never exceptions.
"""
from typing import Callable, Iterable, Mapping, Optional, Sequence, Tuple

import logging

from category import Report, CheckResult, validate_category
from category.report import failed, skipped, merge
from functors import FpModule, simple, are_isomorphic
from extri import Caps, ExtriStructure, TriangulatedStructure
from defects import (DeflationIndex, defect, defect_image, is_effaceable, def_simples, supported_on,
                     indecomposable_modules, verify_serre, verify_eff_equals_def, verify_perp_equals_lex,
                     serre_quotient, theorem_a_classifier, enough_projectives, res_p_check)
from heart import (CotorsionPair, CotorsionError, SearchExhausted, HeartPresentation, Approximation,
                   Reflector, RestrictedYoneda, enumerate_cotorsion_pairs, is_cotorsion_pair,
                   heart_presentation, verify_cohomology, verify_theorem_b, heart_vs_mod_p,
                   lex_approximation, check_restricted_representables)
from .exceptions import UsageError

logger = logging.getLogger(__name__)


def structure_suite(structure: Optional[ExtriStructure], category, caps: Caps,
                    validation: Report = None) -> Report:
    """validate_category, then the axiom spot checks of the backend."""
    validation = validation or validate_category(category)
    if structure is None or not validation.passed:
        return merge('validate', [validation])
    flags = structure.classify_structure(caps)
    report = merge('validate', [validation, structure.verify_structure(caps)])
    report.data['structure'] = structure.info()
    report.data['flags'] = flags.to_json()
    return report


def sigma_suite(structure: ExtriStructure, caps: Caps, deflations: DeflationIndex = None) -> Report:
    """Σ from the E-spaces against the effaceability oracle on every simple."""
    deflations = deflations or DeflationIndex(structure, caps)
    c = structure.category
    sigma = def_simples(structure)
    report = Report('def_simples')
    report.data['sigma'] = list(sigma)
    bad, exhaustive, oracle = [], True, {}
    for x in structure.labels:
        verdict = is_effaceable(simple(c, x), structure, caps, deflations)
        exhaustive = exhaustive and verdict.exhaustive
        oracle[x] = verdict.to_json()
        if bool(verdict) != (x in sigma):
            bad.append({'object': x, 'in_sigma': x in sigma, 'effaceable': verdict})
    report.check('sigma_criterion', not bad, {'objects': bad}, exhaustive=exhaustive,
                 detail='S_X effaceable iff E(X, -) != 0')
    report.data['effaceable'] = oracle
    return report


def defects_suite(structure: ExtriStructure, caps: Caps) -> Report:
    """Σ, and every enumerated defect equals Im δ♯ and lives on Σ."""
    deflations = DeflationIndex(structure, caps)
    report = sigma_suite(structure, caps, deflations)
    report.title = 'defects'
    sigma = report.data['sigma']
    triangles, exhaustive = deflations.conflations()
    image, support, table = [], [], []
    for t in triangles:
        module = defect(t)
        table.append({'triangle': t, 'defect': list(module.dim_vector)})
        if not are_isomorphic(module, defect_image(structure, t)):
            image.append({'triangle': t})
        if not supported_on(module, sigma):
            support.append({'triangle': t, 'support': module.support()})
    report.check('defect_image', not image, {'triangles': image[:5]}, exhaustive=exhaustive,
                 detail='{} conflations'.format(len(triangles)))
    report.check('defect_support', not support, {'triangles': support[:5]}, exhaustive=exhaustive)
    report.data['defects'] = [entry for entry in table if any(entry['defect'])]
    return report


def quotient_suite(structure: ExtriStructure, caps: Caps, sigma: Sequence[str] = None) -> Report:
    """Serre closure, eff = def, the quotient and its adjoints."""
    deflations = DeflationIndex(structure, caps)
    quotient = serre_quotient(structure, sigma)
    modules, exhaustive = indecomposable_modules(structure, caps)
    reports = [
        verify_serre(structure, quotient.sigma, caps, modules, deflations),
        verify_eff_equals_def(structure, quotient.sigma, caps, modules, deflations),
        quotient.verify(structure, caps, modules),
        res_p_check(structure, caps, quotient, modules, deflations),
    ]
    report = merge('quotient', reports)
    report.data['quotient'] = quotient.info()
    report.data['modules'] = {'count': len(modules), 'exhaustive': exhaustive}
    return report


def theorem_a_suite(structure: ExtriStructure, caps: Caps) -> Report:
    """The classifier's answers go into the data; only its self-consistency is a check."""
    result = theorem_a_classifier(structure, caps)
    report = Report('theorem_a')
    for check in result.report.results:
        if check.name == 'consistency':
            report.add(check)
    report.data['is_exact_embedding'] = result.is_exact_embedding
    report.data['is_abelian_equivalence'] = result.is_abelian_equivalence
    report.data['evidence'] = result.report.to_json()
    return report


def lex_suite(structure: ExtriStructure, caps: Caps, pair: CotorsionPair = None) -> Report:
    """lex C = (def C)^⊥ on indecomposables, and approximations by left exact functors."""
    deflations = DeflationIndex(structure, caps)
    sigma = def_simples(structure)
    modules, exhaustive = indecomposable_modules(structure, caps)
    reports = [verify_perp_equals_lex(structure, sigma, caps, modules, exhaustive, deflations)]
    approximations = Report('approximation')
    if pair is not None:
        domain = pair.u_structure()
        domain_modules, _ = indecomposable_modules(domain, caps)
        approximations.add(_approximations(domain_modules, def_simples(domain),
                                           lambda m: lex_approximation(m, domain, caps, pair)))
        reports.append(check_restricted_representables(pair))
    else:
        verdict, _ = enough_projectives(structure, caps, deflations)
        if verdict:
            approximations.add(_approximations(modules, sigma, lambda m: lex_approximation(m, structure, caps)))
        else:
            approximations.add(skipped('modules', 'no right adjoint known: no cotorsion pair and no '
                                                  'enough projectives within caps'))
    reports.append(approximations)
    return merge('lex', reports)


def cotorsion_suite(structure: ExtriStructure, caps: Caps) -> Report:
    """All cotorsion pairs with V derived from U, each certified twice."""
    _require_triangulated(structure)
    report = Report('cotorsion_pairs')
    try:
        pairs = enumerate_cotorsion_pairs(structure, caps)
    except CotorsionError as error:
        report.add(failed('enumeration', {'error': str(error)}, exhaustive=False,
                          detail='caps violation'))
        return report
    report.check('enumeration', True, detail='{} pairs among {} candidates'.format(
        len(pairs), 2 ** len(structure.labels)))
    bad, exhaustive = [], True
    for pair in pairs:
        again = is_cotorsion_pair(structure, pair.u, pair.v, caps)
        exhaustive = exhaustive and again.exhaustive
        if not again.passed:
            bad.append({'pair': pair, 'statuses': again.statuses()})
    report.check('recertified', not bad, {'pairs': bad}, exhaustive=exhaustive)
    report.data['count'] = len(pairs)
    report.data['pairs'] = [pair.to_json() for pair in pairs]
    return report


def heart_suite(pair: CotorsionPair, caps: Caps) -> Report:
    """The heart, its reflections and the cohomological functor."""
    presentation, report = _heart(pair, caps)
    if presentation is None:
        return report
    reflector = Reflector(presentation, caps)
    report = merge('heart', [report, verify_cohomology(reflector, caps)])
    report.data['heart'] = presentation.to_json()
    return report


def theorem_b_suite(pair: CotorsionPair, caps: Caps,
                    heart_hom_dims: Mapping[Tuple[str, str], int] = None) -> Report:
    """The heart against lex U[-1], with an optional claimed hom table."""
    presentation, report = _heart(pair, caps)
    if presentation is None:
        return report
    if heart_hom_dims:
        presentation = presentation.with_hom_dims(heart_hom_dims)
    return merge('theorem_b', [report, verify_theorem_b(presentation, caps, RestrictedYoneda(pair))])


def mod_p_suite(pair: CotorsionPair, caps: Caps) -> Report:
    presentation, report = _heart(pair, caps)
    if presentation is None:
        return report
    return merge('heart_vs_mod_p', [report, heart_vs_mod_p(presentation, caps)])


# ------------------- private helpers -------------------

def _require_triangulated(structure: ExtriStructure) -> None:
    if not isinstance(structure, TriangulatedStructure):
        raise UsageError("cotorsion pairs need a triangulated backend, not {}".format(structure.tag))


def _heart(pair: CotorsionPair, caps: Caps) -> Tuple[Optional[HeartPresentation], Report]:
    evidence = pair.evidence or is_cotorsion_pair(pair.structure, pair.u, pair.v, caps)
    report = Report('cotorsion_pair', list(evidence.results), dict(evidence.data))
    if not evidence.passed:
        logger.warning("%s is not certified as a cotorsion pair: %s", pair, evidence.statuses())
        report.add(skipped('heart', 'not a cotorsion pair'))
        return None, report
    return heart_presentation(pair, caps), report


def _approximations(modules: Iterable[FpModule], sigma: Sequence[str],
                    approximate: Callable[[FpModule], Approximation]) -> CheckResult:
    bad, count, exhaustive = [], 0, True
    for module in modules:
        count += 1
        try:
            result = approximate(module).check(sigma)
        except (SearchExhausted, CotorsionError) as error:
            exhaustive = False
            bad.append({'module': module, 'error': str(error)})
            continue
        if not result.passed:
            bad.append({'module': module, 'statuses': result.statuses()})
    if bad:
        return failed('modules', {'modules': bad[:5]}, exhaustive=exhaustive,
                      detail='{} of {} modules'.format(len(bad), count))
    return CheckResult('modules', detail='S in def, G in (def)^⊥, im φ = ker ψ on {} modules'.format(count))
